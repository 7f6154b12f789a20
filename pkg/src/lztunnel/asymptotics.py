"""Closed-form limit curves and tunneling times.

Adiabatic limit (eta << 1) and sudden limit (eta >> 1) results in both bases,
the Fresnel integrals they are built from, and Vitanov's adiabatic-basis time.
Sudden-limit expressions are written in the scaled time ``y = t/sqrt(hbar/alpha)``.
"""
from __future__ import annotations

import math
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy import optimize, special

from .model import Basis, LzParams

__all__ = [
    "LimitKind",
    "fresnel",
    "scaled_time",
    "curve_adiabatic_diabatic",
    "curve_adiabatic_adiabatic",
    "curve_sudden_diabatic",
    "b1",
    "curve_sudden_adiabatic",
    "sudden_half_width",
    "sudden_tau_constant",
    "limit_tau",
    "vitanov_zeta_adiabatic",
]

FRESNEL_SWITCH = 50.0
_SQRT_PI = math.sqrt(math.pi)


class LimitKind(str, Enum):
    ADIABATIC = "adiabatic_limit"
    SUDDEN = "sudden_limit"


def _half_pi_x2_phase(x: np.ndarray) -> np.ndarray:
    """pi*x**2/2 reduced modulo 2*pi without losing the low bits of x**2."""
    c = 134217729.0 * x  # Veltkamp split: x = hi + lo with hi**2 exact
    hi = c - (c - x)
    lo = x - hi
    whole = np.fmod(hi * hi, 4.0)
    return 0.5 * math.pi * (whole + (2.0 * hi * lo + lo * lo))


def _fresnel_asymptotic(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Large-|x| expansion through the auxiliary functions f and g (x > 0)."""
    z = 1.0 / (math.pi * x * x)
    z2 = z * z
    # f ~ (1/(pi x)) sum (-1)^m (4m-1)!! z^2m,  g ~ (z/(pi x)) sum (-1)^m (4m+1)!! z^2m
    f_sum = np.ones_like(x)
    g_sum = np.ones_like(x)
    f_term = np.ones_like(x)
    g_term = np.ones_like(x)
    for m in range(1, 6):
        f_term = -f_term * (4 * m - 3) * (4 * m - 1) * z2
        g_term = -g_term * (4 * m - 1) * (4 * m + 1) * z2
        f_sum = f_sum + f_term
        g_sum = g_sum + g_term
    f = f_sum / (math.pi * x)
    g = g_sum * z / (math.pi * x)
    phase = _half_pi_x2_phase(x)
    s, c = np.sin(phase), np.cos(phase)
    return 0.5 + f * s - g * c, 0.5 - f * c - g * s


def fresnel(x):
    """Fresnel integrals C(x) = int_0^x cos(pi u^2/2) du and S(x) likewise with sin.

    Returns ``(C, S)``; scalars in, floats out.
    """
    xa = np.asarray(x, dtype=float)
    ax = np.abs(xa)
    small = ax <= FRESNEL_SWITCH
    c = np.empty_like(ax)
    s = np.empty_like(ax)
    if np.any(small):
        s_small, c_small = special.fresnel(ax[small])
        c[small], s[small] = c_small, s_small
    if np.any(~small):
        c[~small], s[~small] = _fresnel_asymptotic(ax[~small])
    sign = np.sign(xa)
    c, s = sign * c, sign * s
    if c.ndim == 0:
        return float(c), float(s)
    return c, s


def scaled_time(params: LzParams, t):
    return np.asarray(t, dtype=float) / params.sudden_time


def curve_adiabatic_diabatic(params: LzParams, t):
    """P_d(t) in the adiabatic limit: 1/2 + alpha t / (2 sqrt(alpha^2 t^2 + delta^2))."""
    g = params.alpha * np.asarray(t, dtype=float)
    return 0.5 + g / (2.0 * np.hypot(g, params.delta))


def curve_adiabatic_adiabatic(params: LzParams, t):
    """P_a(t) in the adiabatic limit: a single peak of height eta**2/16 at t = 0."""
    al, d = params.alpha, params.delta
    g2 = (al * np.asarray(t, dtype=float)) ** 2
    return (al * params.hbar * d) ** 2 / (4.0 * (g2 + d * d) ** 3)


def b1(y):
    """First-order sudden-limit amplitude integral int_{-inf}^{y} exp(-i x^2/2) dx."""
    c, s = fresnel(np.asarray(y, dtype=float) / _SQRT_PI)
    return _SQRT_PI * ((0.5 + c) - 1j * (0.5 + s))


def curve_sudden_diabatic(eta: float, y):
    """P_d in the sudden limit: |b1(y)|^2 / (2 eta).

    Equals pi/(4 eta) at y = 0 and tends to pi/eta as y -> inf.
    """
    c, s = fresnel(np.asarray(y, dtype=float) / _SQRT_PI)
    return (math.pi / (2.0 * eta)) * ((0.5 + c) ** 2 + (0.5 + s) ** 2)


def curve_sudden_adiabatic(eta: float, y, leading: bool = False):
    """P_a in the sudden limit.

    The default projects the first-order sudden-limit state
    ``a = exp(-i y^2/4)``, ``b = b1(y) exp(i y^2/4) / (i sqrt(2 eta))`` onto the
    upper eigenstate.  ``leading=True`` keeps only the two dominant terms,
    ``1/2 + y / (2 sqrt(y^2 + 2/eta))``, which is the adiabatic-limit diabatic
    curve written in scaled time.
    """
    y = np.asarray(y, dtype=float)
    ratio = y / np.sqrt(y * y + 2.0 / eta)
    if leading:
        return 0.5 + 0.5 * ratio
    c1_sq = 0.5 * (1.0 + ratio)
    c2_sq = 0.5 * (1.0 - ratio)
    amp = b1(y)
    cos_int, sin_int = amp.real, -amp.imag
    cross = np.sqrt(2.0 / (eta * (eta * y * y + 2.0))) * (
        cos_int * np.sin(y * y / 2.0) - sin_int * np.cos(y * y / 2.0)
    )
    return c1_sq + cross + c2_sq * np.abs(amp) ** 2 / (2.0 * eta)


@lru_cache(maxsize=None)
def sudden_half_width() -> float:
    """Scaled half-width time y' < 0 of the sudden-limit diabatic curve.

    Root of [1/2 + C(x)]^2 + [1/2 + S(x)]^2 = 1/4 with x = y/sqrt(pi), the
    point where the curve falls to half its t = 0 value.
    """

    def excess(x: float) -> float:
        c, s = fresnel(x)
        return (0.5 + c) ** 2 + (0.5 + s) ** 2 - 0.25

    x = optimize.brentq(excess, -2.0, 0.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return _SQRT_PI * x


def sudden_tau_constant() -> float:
    """Prefactor of sqrt(hbar/alpha) in the sudden-limit diabatic tunneling time (4|y'|)."""
    return 4.0 * abs(sudden_half_width())


def limit_tau(basis: Basis | str, limit: LimitKind | str, params: LzParams) -> float:
    basis = Basis.parse(basis)
    limit = LimitKind(limit)
    if basis is Basis.DIABATIC and limit is LimitKind.SUDDEN:
        return sudden_tau_constant() * params.sudden_time
    if basis is Basis.ADIABATIC and limit is LimitKind.ADIABATIC:
        return 2.0 * math.sqrt(2.0 ** (1.0 / 3.0) - 1.0) * params.adiabatic_time
    return 2.0 * math.sqrt(3.0) / 3.0 * params.adiabatic_time


def vitanov_zeta_adiabatic(params: LzParams, scaled: bool = False) -> float:
    """Vitanov's adiabatic-limit time in the adiabatic basis.

    The dimensionless value is ``sqrt(2) delta / sqrt(alpha hbar) * exp(-pi delta^2 / (4 alpha hbar))``
    ``= (2/sqrt(eta)) exp(-pi/(2 eta))``, returned as is with ``scaled=True``.
    Otherwise it is converted with the unit ``sqrt(2 hbar/alpha)``, the
    conversion under which it equals P_a(inf)/P_a'(0) of the exact solution.
    """
    eta = params.eta
    value = 2.0 / math.sqrt(eta) * math.exp(-math.pi / (2.0 * eta))
    if scaled:
        return value
    return value * math.sqrt(2.0 * params.hbar / params.alpha)
