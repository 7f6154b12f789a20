"""Tunneling probability P(t) in the diabatic or adiabatic basis."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize

from .errors import TailNotSettled
from .model import Basis, LzParams, eigen_components, lz_asymptote
from .propagator import Trajectory

__all__ = ["ProbabilityCurve", "diabatic_curve", "adiabatic_curve", "curve", "numeric_tail_asymptote"]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _diabatic_p(traj: Trajectory, t, a, b):
    return np.abs(b) ** 2


def _diabatic_dp(traj: Trajectory, t, a, b):
    # 2 Re(b* db/dt) with db/dt from the equation of motion
    p = traj.params
    return (p.delta / p.hbar) * np.imag(np.conj(b) * a)


def _adiabatic_projections(params: LzParams, t, a, b):
    c1, c2 = eigen_components(params, t)
    return c1 * a + c2 * b, c2 * a - c1 * b


def _adiabatic_p(traj: Trajectory, t, a, b):
    upper, _ = _adiabatic_projections(traj.params, t, a, b)
    return np.abs(upper) ** 2


def _adiabatic_dp(traj: Trajectory, t, a, b):
    # d|A_u|^2/dt = -theta' Re(A_u* A_l): only the rotation of the eigenbasis
    # changes the population, the dynamical phase drops out.
    p = traj.params
    upper, lower = _adiabatic_projections(p, t, a, b)
    g = p.alpha * np.asarray(t, dtype=float)
    rate = p.alpha * p.delta / (g * g + p.delta**2)
    return rate * np.real(np.conj(upper) * lower)


_KERNELS = {
    Basis.DIABATIC: (_diabatic_p, _diabatic_dp),
    Basis.ADIABATIC: (_adiabatic_p, _adiabatic_dp),
}


@dataclass(frozen=True)
class ProbabilityCurve:
    """P(t) over the trajectory's window with its equation-of-motion derivative.

    ``p_infinity`` is the closed-form Landau-Zener asymptote; ``p_max_neg`` is
    the maximum over t <= 0, located on the sample grid and refined by golden
    section when it is interior.
    """

    basis: Basis
    params: LzParams
    trajectory: Trajectory
    t: np.ndarray
    samples: np.ndarray
    p_infinity: float
    p0: float
    p_max_neg: float
    t_at_max_neg: float

    def p(self, t):
        a, b = self.trajectory.state(t)
        out = _KERNELS[self.basis][0](self.trajectory, t, a, b)
        return float(out) if np.ndim(out) == 0 else out

    def dp_dt(self, t):
        a, b = self.trajectory.state(t)
        out = _KERNELS[self.basis][1](self.trajectory, t, a, b)
        return float(out) if np.ndim(out) == 0 else out

    @property
    def t_start(self) -> float:
        return self.trajectory.t_start

    @property
    def t_end(self) -> float:
        return self.trajectory.t_end


def _golden_max(f, lo: float, hi: float, tol: float) -> float:
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
    return 0.5 * (lo + hi)


def curve(traj: Trajectory, basis: Basis | str) -> ProbabilityCurve:
    basis = Basis.parse(basis)
    p_kernel, _ = _KERNELS[basis]
    t = traj.t
    samples = p_kernel(traj, t, traj.a, traj.b)
    samples.setflags(write=False)
    i0 = traj.zero_index
    p0 = float(samples[i0])

    k = int(np.argmax(samples[: i0 + 1]))
    t_max, p_max = float(t[k]), float(samples[k])
    if 0 < k < i0:
        def p_at(x: float) -> float:
            a, b = traj.state(x)
            return float(p_kernel(traj, x, a, b))

        resolution = 1e-10 * (traj.t_end - traj.t_start)
        x = _golden_max(p_at, float(t[k - 1]), float(t[k + 1]), resolution)
        if p_at(x) > p_max:
            t_max, p_max = x, p_at(x)

    return ProbabilityCurve(
        basis=basis,
        params=traj.params,
        trajectory=traj,
        t=t,
        samples=samples,
        p_infinity=lz_asymptote(traj.params, basis),
        p0=p0,
        p_max_neg=p_max,
        t_at_max_neg=t_max,
    )


def diabatic_curve(traj: Trajectory) -> ProbabilityCurve:
    """P_d(t) = |b(t)|^2."""
    return curve(traj, Basis.DIABATIC)


def adiabatic_curve(traj: Trajectory) -> ProbabilityCurve:
    """P_a(t): population of the upper instantaneous eigenstate."""
    return curve(traj, Basis.ADIABATIC)


def _segment_mean(c: ProbabilityCurve, lo: float, hi: float) -> float:
    value, _ = integrate.quad(c.p, lo, hi, limit=400, epsabs=1e-13, epsrel=1e-11)
    return value / (hi - lo)


def _beat_phase(params: LzParams, t: float) -> float:
    """Integral of the level splitting from 0 to t, over hbar."""
    g, d = params.alpha * t, params.delta
    if d == 0:
        return g * t / (2.0 * params.hbar)
    return (t * math.hypot(g, d) + d * d / params.alpha * math.asinh(g / d)) / (2.0 * params.hbar)


def _two_beats_before(params: LzParams, t_hi: float) -> float:
    target = _beat_phase(params, t_hi) - 4.0 * math.pi
    if target <= 0:
        raise TailNotSettled("window too short for two oscillation segments after the crossing")
    return optimize.brentq(lambda x: _beat_phase(params, x) - target, 0.0, t_hi, xtol=1e-13 * t_hi)


def numeric_tail_asymptote(c: ProbabilityCurve, settle_tol: float = 1e-4) -> float:
    """Average of p over the last two beat periods before t_end.

    A segment spans exactly 4 pi of the adiabatic phase, which near t_end is
    about ``4 pi hbar / (alpha t_end)`` long.  Matching the phase rather than
    a fixed width cancels the chirped oscillation far better.  The preceding
    segment must agree within ``settle_tol`` or :class:`TailNotSettled` is
    raised.
    """
    params, t_end = c.params, c.t_end
    t1 = _two_beats_before(params, t_end)
    t2 = _two_beats_before(params, t1)
    last = _segment_mean(c, t1, t_end)
    previous = _segment_mean(c, t2, t1)
    if abs(last - previous) > settle_tol:
        raise TailNotSettled(f"tail averages differ by {abs(last - previous):.3g} (> {settle_tol:g})")
    return last
