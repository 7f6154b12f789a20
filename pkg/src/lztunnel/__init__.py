"""Tunneling time in the Landau-Zener model.

Propagates the two-level Schroedinger equation, builds the transition
probability in the diabatic or adiabatic basis, and extracts a tunneling time
from its half-width and the areas under its derivative.  Closed-form limits
for slow and fast sweeps are in :mod:`lztunnel.asymptotics`.
"""
from .errors import (
    DegenerateS1,
    InvalidParameters,
    LzError,
    NoCrossing,
    NormDriftExceeded,
    StepUnderflow,
    TailNotSettled,
    WindowNotConverged,
    WindowTooSmall,
    ZeroSlope,
)
from .model import Amplitudes, Basis, LzParams, lz_asymptote
from .propagator import IntegrationConfig, Trajectory, evolve, propagate
from .probability import ProbabilityCurve, adiabatic_curve, curve, diabatic_curve, numeric_tail_asymptote
from .tunneling import TunnelingTimeReport, empirical_time, tunneling_time, vitanov_time
from .asymptotics import LimitKind, fresnel, limit_tau, vitanov_zeta_adiabatic

__all__ = [
    "Amplitudes",
    "Basis",
    "DegenerateS1",
    "IntegrationConfig",
    "InvalidParameters",
    "LimitKind",
    "LzError",
    "LzParams",
    "NoCrossing",
    "NormDriftExceeded",
    "ProbabilityCurve",
    "StepUnderflow",
    "TailNotSettled",
    "Trajectory",
    "TunnelingTimeReport",
    "WindowNotConverged",
    "WindowTooSmall",
    "ZeroSlope",
    "adiabatic_curve",
    "curve",
    "diabatic_curve",
    "empirical_time",
    "evolve",
    "fresnel",
    "limit_tau",
    "lz_asymptote",
    "numeric_tail_asymptote",
    "propagate",
    "tunneling_time",
    "vitanov_time",
    "vitanov_zeta_adiabatic",
]

__version__ = "0.1.0"
