"""Landau-Zener two-level model: parameters, Hamiltonian and eigenstates.

The Hamiltonian is

    H(t) = [[ gamma/2, delta/2],
            [ delta/2, -gamma/2]],     gamma = alpha * t,

acting on the diabatic amplitudes (a, b).  Everything downstream depends on
the parameters only through the quickness ``eta = 2 hbar alpha / delta**2``
and the two time scales ``delta/alpha`` and ``sqrt(hbar/alpha)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import InvalidParameters

__all__ = [
    "Basis",
    "Amplitudes",
    "LzParams",
    "hamiltonian",
    "energy",
    "eigen_components",
    "upper_eigenstate",
    "lower_eigenstate",
    "lz_asymptote",
]


class Basis(str, Enum):
    DIABATIC = "diabatic"
    ADIABATIC = "adiabatic"

    @classmethod
    def parse(cls, value: "Basis | str") -> "Basis":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InvalidParameters(f"unknown basis {value!r}") from None


class Amplitudes(NamedTuple):
    """State vector (a, b) in the diabatic basis."""

    a: complex
    b: complex

    @property
    def norm2(self) -> float:
        return abs(self.a) ** 2 + abs(self.b) ** 2

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b], dtype=complex)


@dataclass(frozen=True)
class LzParams:
    """Gap ``delta``, sweep rate ``alpha`` and the unit-system ``hbar``.

    ``allow_uncoupled`` admits ``delta == 0``; it exists for tests of the
    degenerate, uncoupled model and is rejected everywhere user input enters.
    """

    delta: float
    alpha: float
    hbar: float = 1.0
    allow_uncoupled: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        for name in ("delta", "alpha", "hbar"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise InvalidParameters(f"{name} must be a finite real number, got {value!r}")
        if self.alpha <= 0 or self.hbar <= 0:
            raise InvalidParameters("alpha and hbar must be positive")
        if self.delta < 0 or (self.delta == 0 and not self.allow_uncoupled):
            raise InvalidParameters("delta must be positive")

    @classmethod
    def from_eta(cls, eta: float, delta: float = 1.0, hbar: float = 1.0) -> "LzParams":
        """Parameters with the given quickness; ``alpha`` in units of delta**2/(2 hbar) equals eta."""
        if not (isinstance(eta, (int, float)) and math.isfinite(eta) and eta > 0):
            raise InvalidParameters(f"eta must be a positive finite number, got {eta!r}")
        return cls(delta=float(delta), alpha=eta * delta**2 / (2.0 * hbar), hbar=float(hbar))

    @property
    def eta(self) -> float:
        if self.delta == 0:
            return math.inf
        return 2.0 * self.hbar * self.alpha / self.delta**2

    @property
    def adiabatic_time(self) -> float:
        """Adiabatic-limit time scale delta/alpha."""
        return self.delta / self.alpha

    @property
    def sudden_time(self) -> float:
        """Sudden-limit time scale sqrt(hbar/alpha)."""
        return math.sqrt(self.hbar / self.alpha)

    @property
    def time_scale(self) -> float:
        return max(self.adiabatic_time, self.sudden_time)


def hamiltonian(params: LzParams, t: float) -> np.ndarray:
    g = params.alpha * t
    d = params.delta
    return np.array([[g / 2, d / 2], [d / 2, -g / 2]], dtype=complex)


def energy(params: LzParams, t):
    """Upper eigenvalue sqrt(gamma**2 + delta**2)/2 (the lower one is its negative)."""
    return 0.5 * np.hypot(params.alpha * np.asarray(t, dtype=float), params.delta)


def eigen_components(params: LzParams, t):
    """Components (c1, c2) of the upper eigenstate, both real and non-negative.

    Evaluated without the cancellation in ``1 +- gamma/E`` so the result stays
    accurate far from the crossing.
    """
    g = params.alpha * np.asarray(t, dtype=float)
    d2 = params.delta**2
    e = np.hypot(g, params.delta)
    with np.errstate(invalid="ignore", divide="ignore"):
        # E + g and E - g, each formed on the side where no cancellation occurs
        e_plus = np.where(g >= 0, e + g, d2 / (e - g))
        e_minus = np.where(g >= 0, d2 / (e + g), e - g)
        c1 = np.sqrt(e_plus / (2 * e))
        c2 = np.sqrt(e_minus / (2 * e))
    if np.ndim(c1) == 0:
        return float(c1), float(c2)
    return c1, c2


def upper_eigenstate(params: LzParams, t: float) -> Amplitudes:
    c1, c2 = eigen_components(params, t)
    return Amplitudes(complex(c1), complex(c2))


def lower_eigenstate(params: LzParams, t: float) -> Amplitudes:
    """Orthogonal complement of the upper eigenstate, first component non-negative."""
    c1, c2 = eigen_components(params, t)
    return Amplitudes(complex(c2), complex(-c1))


def lz_asymptote(params: LzParams, basis: Basis | str) -> float:
    """Closed-form P(+infinity) for the run that starts in (1, 0)."""
    survival = math.exp(-math.pi / params.eta)
    if Basis.parse(basis) is Basis.DIABATIC:
        return -math.expm1(-math.pi / params.eta)
    return survival
