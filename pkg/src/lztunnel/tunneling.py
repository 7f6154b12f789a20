"""Tunneling time from a probability curve.

The main estimator takes the half-width time t' < 0 at which P falls to half
its maximum over t <= 0, the left area S1 = P(0) and the right area
S2 = P(inf) - P(0) of dP/dt, and returns tau = |t'| (1 + |S2/S1|).  Vitanov's
P(inf)/P'(0) and the empirical interpolation sqrt(delta^2/alpha^2 + 2 hbar/alpha)
are reported alongside for comparison.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .errors import DegenerateS1, NoCrossing, ZeroSlope
from .model import Basis, LzParams
from .probability import ProbabilityCurve

__all__ = [
    "TunnelingTimeReport",
    "half_width_time",
    "areas",
    "tunneling_time",
    "vitanov_time",
    "empirical_time",
]


@dataclass(frozen=True)
class Diagnostics:
    crossing_count: int
    s2_negative: bool


@dataclass(frozen=True)
class TunnelingTimeReport:
    basis: Basis
    params: LzParams
    t_prime: float
    p_max_neg: float
    s1: float
    s2: float
    tau: float
    tau_vitanov: float
    tau_empirical: float
    diagnostics: Diagnostics = field(default_factory=lambda: Diagnostics(0, False))

    @property
    def ratio(self) -> float:
        return abs(self.s2 / self.s1)


def half_width_time(curve: ProbabilityCurve) -> tuple[float, int]:
    """Latest t' < t_at_max_neg with p(t') = p_max_neg / 2, and the number of such crossings.

    Sign changes of ``p - p_max_neg/2`` are located on the sample grid and each
    bracket is solved to ``1e-10 |t_start|``.  The crossing nearest the maximum
    (the leading edge of the main rise) is returned.
    """
    half = 0.5 * curve.p_max_neg
    if not half > 0:
        raise NoCrossing("p_max_neg is zero: nothing to take the half width of")
    t = curve.t
    stop = int(np.searchsorted(t, curve.t_at_max_neg, side="right"))
    grid_t, grid_p = t[:stop], curve.samples[:stop]
    if grid_t[-1] < curve.t_at_max_neg:
        grid_t = np.append(grid_t, curve.t_at_max_neg)
        grid_p = np.append(grid_p, curve.p_max_neg)
    excess = grid_p - half
    above = excess > 0
    brackets = np.flatnonzero(~above[:-1] & above[1:])
    falls = np.flatnonzero(above[:-1] & ~above[1:])
    count = len(brackets) + len(falls)
    if len(brackets) == 0:
        raise NoCrossing("p never drops below p_max_neg/2 before its maximum; widen the window")
    k = int(brackets[-1])
    xtol = 1e-10 * abs(curve.t_start)

    def f(x: float) -> float:
        return curve.p(x) - half

    lo, hi = float(grid_t[k]), float(grid_t[k + 1])
    if f(lo) == 0.0:
        return lo, count
    return optimize.brentq(f, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps), count


def areas(curve: ProbabilityCurve) -> tuple[float, float]:
    """Left and right areas under dP/dt: (P(0), P(inf) - P(0))."""
    if curve.p0 <= 1e-300:
        raise DegenerateS1(f"P(0) = {curve.p0:.3g}; the area ratio is undefined")
    return curve.p0, curve.p_infinity - curve.p0


def vitanov_time(curve: ProbabilityCurve) -> float:
    slope = curve.dp_dt(0.0)
    if not abs(slope) > 1e-300:
        raise ZeroSlope("dP/dt vanishes at t = 0")
    return curve.p_infinity / slope


def empirical_time(params: LzParams) -> float:
    a = params.alpha
    return math.sqrt((params.delta / a) ** 2 + 2.0 * params.hbar / a)


def tunneling_time(curve: ProbabilityCurve) -> TunnelingTimeReport:
    t_prime, count = half_width_time(curve)
    s1, s2 = areas(curve)
    try:
        tau_v = vitanov_time(curve)
    except ZeroSlope:
        tau_v = math.nan
    return TunnelingTimeReport(
        basis=curve.basis,
        params=curve.params,
        t_prime=t_prime,
        p_max_neg=curve.p_max_neg,
        s1=s1,
        s2=s2,
        tau=abs(t_prime) * (1.0 + abs(s2 / s1)),
        tau_vitanov=tau_v,
        tau_empirical=empirical_time(curve.params),
        diagnostics=Diagnostics(crossing_count=count, s2_negative=s2 < 0),
    )
