"""Time propagation of the Landau-Zener equation of motion.

The amplitudes obey ``i hbar d/dt (a, b) = H(t) (a, b)`` with a Hamiltonian
linear in time, so the Taylor coefficients of the solution around any point
follow a short three-term recurrence.  The integrator is an adaptive Taylor
method: a fixed high order, step sizes chosen from the tail coefficients
(error per unit step), and every step's polynomial doubles as the dense
output on that step.  Internally time is measured in units of hbar/delta, so
the rescaled sweep rate equals eta/2.

The run starts at ``-C * max(delta/alpha, sqrt(hbar/alpha))`` in the
superadiabatic state that continues the lower adiabatic level from
``t = -inf``; see :func:`superadiabatic_state`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (
    InvalidParameters,
    NormDriftExceeded,
    StepUnderflow,
    WindowNotConverged,
    WindowTooSmall,
)
from .model import Amplitudes, LzParams, eigen_components, lower_eigenstate

__all__ = [
    "IntegrationConfig",
    "Trajectory",
    "integration_window",
    "initial_state",
    "superadiabatic_state",
    "evolve",
    "propagate",
]

_DOUBLE_ORDER = 30
_MIN_SAMPLES = 4000
_CONVERGENCE_TOL = 1e-6


@dataclass(frozen=True)
class IntegrationConfig:
    """Integrator settings.

    ``start_order`` selects the initial state: ``None`` iterates the
    superadiabatic series until it stops improving, ``0`` is the bare lower
    eigenstate, ``n > 0`` truncates after n iterations.
    """

    window_factor: float = 20.0
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_norm_drift: float = 1e-9
    convergence_check: bool = True
    start_order: int | None = None
    max_steps: int = 5_000_000

    def __post_init__(self) -> None:
        if not self.window_factor >= 5:
            raise InvalidParameters("window_factor must be >= 5")
        if not (self.rel_tol > 0 and self.abs_tol > 0 and self.max_norm_drift > 0):
            raise InvalidParameters("tolerances must be positive")
        if not self.max_norm_drift > self.rel_tol:
            raise InvalidParameters("max_norm_drift must exceed rel_tol")
        if self.start_order is not None and self.start_order < 0:
            raise InvalidParameters("start_order must be >= 0")


@dataclass(frozen=True)
class _Units:
    """Conversion between physical time and the internal dimensionless time."""

    time: float  # physical time per internal unit
    alpha: float  # rescaled sweep rate
    delta: float  # rescaled gap (1, or 0 for the uncoupled test model)

    @classmethod
    def of(cls, params: LzParams) -> "_Units":
        if params.delta > 0:
            unit = params.hbar / params.delta
        else:
            unit = params.sudden_time
        return cls(unit, params.alpha * unit**2 / params.hbar, params.delta * unit / params.hbar)


def integration_window(params: LzParams, config: IntegrationConfig | None = None) -> tuple[float, float]:
    config = config or IntegrationConfig()
    half = config.window_factor * params.time_scale
    return -half, half


def initial_state(params: LzParams, t_start: float) -> Amplitudes:
    """Lower instantaneous eigenstate at ``t_start`` (tends to (1, 0) as t -> -inf)."""
    if not t_start < 0:
        raise WindowTooSmall("t_start must be negative")
    if params.alpha * abs(t_start) < 10 * params.delta:
        raise WindowTooSmall(
            f"alpha*|t_start| = {params.alpha * abs(t_start):.3g} < 10*delta; "
            "the window cannot represent the state at t = -inf"
        )
    return lower_eigenstate(params, t_start)


# --------------------------------------------------------------------------
# superadiabatic start


def _quadratic_power(q0: float, q1: float, q2: float, p: float, m: int) -> np.ndarray:
    """Taylor coefficients of (q0 + q1 e + q2 e**2)**p up to e**(m-1)."""
    f = np.zeros(m)
    f[0] = q0**p
    q = (q0, q1, q2)
    for n in range(1, m):
        acc = 0.0
        for j in (1, 2):
            if j <= n:
                acc += (p * j - n + j) * q[j] * f[n - j]
        f[n] = acc / (n * q0)
    return f


def _superadiabatic_ratio(units: _Units, s: float, order: int | None, max_order: int = 16) -> complex:
    """Ratio A_upper/A_lower of the slaved (non-oscillating) solution at time s.

    In the adiabatic frame the ratio obeys the Riccati equation
    ``r' = -i E r - k (1 + r**2)`` with ``k`` half the mixing-angle rate.  The
    slaved solution is iterated as ``r <- i (k + k r**2 + r') / E`` on local
    Taylor series in ``g = alpha*s``; each pass gains one order in
    ``alpha/E**2``.
    """
    if units.delta == 0 or order == 0:
        return 0j
    al, d = units.alpha, units.delta
    g = al * s
    n_iter = max_order if order is None else order
    m = n_iter + 2
    q0, q1, q2 = g * g + d * d, 2 * g, 1.0
    kappa = -0.5 * al * d * _quadratic_power(q0, q1, q2, -1.0, m)
    inv_e = _quadratic_power(q0, q1, q2, -0.5, m)
    deriv = np.arange(1, m)

    r = np.zeros(m, dtype=complex)
    best, last_change = 0j, math.inf
    for _ in range(n_iter):
        r2 = np.convolve(r, r)[:m]
        dr = np.zeros(m, dtype=complex)
        dr[:-1] = al * deriv * r[1:]
        new = 1j * np.convolve(kappa * (1 + 0j) + np.convolve(kappa, r2)[:m] + dr, inv_e)[:m]
        change = abs(new[0] - r[0])
        if order is None and change >= last_change:
            break  # asymptotic series has started to diverge
        r, best, last_change = new, new[0], change
        if order is None and change <= 1e-18 * max(abs(best), 1e-300):
            break
    return complex(best)


def superadiabatic_state(params: LzParams, t: float, order: int | None = None) -> Amplitudes:
    """State at ``t < 0`` that evolved from the lower level at t = -inf.

    The lower eigenstate plus the slaved admixture of the upper one, normalized.
    ``order=0`` gives :func:`initial_state`; the residual mismatch of the bare
    eigenstate is of size ``alpha*hbar*delta / (2 (gamma**2+delta**2)**1.5)``.
    """
    units = _Units.of(params)
    r = _superadiabatic_ratio(units, t / units.time, order)
    c1, c2 = eigen_components(params, t)
    norm = math.sqrt(1.0 + abs(r) ** 2)
    return Amplitudes((c2 + r * c1) / norm, (-c1 + r * c2) / norm)


# --------------------------------------------------------------------------
# Taylor stepping


def _coefficients(g0, half_alpha, half_delta, a, b, order, minus_i):
    """Taylor coefficients of (a, b) around a point with diagonal energy g0."""
    ca = [a]
    cb = [b]
    pa = pb = 0 * a
    hg = g0 / 2
    for n in range(order):
        an, bn = ca[n], cb[n]
        f = minus_i / (n + 1)
        ca.append(f * (hg * an + half_delta * bn + half_alpha * pa))
        cb.append(f * (half_delta * an - hg * bn - half_alpha * pb))
        pa, pb = an, bn
    return ca, cb


def _horner(coeffs, h):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * h + c
    return acc


def _integrate_segment(units, s0, s1, a, b, config, h_max):
    """Step from s0 to s1 (either direction); returns sample lists including both ends."""
    half_alpha = units.alpha / 2
    half_delta = units.delta / 2
    order = _DOUBLE_ORDER
    span = abs(s1 - s0)
    a, b = complex(a), complex(b)
    if span == 0:
        return [s0], [a], [b]
    direction = 1.0 if s1 > s0 else -1.0
    # error per unit step: accumulated truncation stays below the tolerance
    tol_unit = (config.rel_tol + config.abs_tol) / max(span, 1.0)
    h_min = 1e-13 * max(span, 1.0)
    s = float(s0)
    ts, sa, sb = [s], [a], [b]
    for _ in range(config.max_steps):
        remaining = abs(s1 - s)
        if remaining == 0:
            break
        ca, cb = _coefficients(units.alpha * s, half_alpha, half_delta, a, b, order, -1j)
        h = h_max
        for k in (order - 1, order):
            mag = abs(ca[k]) + abs(cb[k])
            if mag > 0:
                h = min(h, (tol_unit / mag) ** (1.0 / (k - 1)))
        h *= 0.9
        if not h >= h_min and remaining > h_min:
            raise StepUnderflow(f"step size collapsed to {h:.3g} at internal time {s:.6g}")
        if h >= remaining or remaining - h < 1e-3 * h:
            s_next = float(s1)
        else:
            s_next = s + direction * h
        a, b = _horner(ca, s_next - s), _horner(cb, s_next - s)
        if not (math.isfinite(abs(a)) and math.isfinite(abs(b))):
            raise StepUnderflow(f"non-finite amplitudes at internal time {s:.6g}")
        s = s_next
        ts.append(s)
        sa.append(a)
        sb.append(b)
    else:
        raise StepUnderflow(f"exceeded max_steps={config.max_steps}")
    return ts, sa, sb


def _dense(units: _Units, s_grid, a_grid, b_grid, s_query):
    """Vectorized re-expansion from the nearest sample at or before each query time."""
    s_query = np.asarray(s_query, dtype=float)
    idx = np.searchsorted(s_grid, s_query, side="right") - 1
    idx = np.clip(idx, 0, len(s_grid) - 2)
    s0 = s_grid[idx]
    ds = s_query - s0
    ca, cb = _coefficients(
        units.alpha * s0, units.alpha / 2, units.delta / 2, a_grid[idx], b_grid[idx], _DOUBLE_ORDER, -1j
    )
    return _horner(ca, ds), _horner(cb, ds)


@dataclass(frozen=True)
class Trajectory:
    """Samples of (a, b) on the step grid plus dense access in between.

    ``t`` is strictly increasing, starts at the window's lower edge, ends at
    its upper edge and contains 0 exactly.  :meth:`state` re-expands the
    Taylor polynomial of the step that contains the query time, so its
    accuracy is that of the integrator.
    """

    params: LzParams
    config: IntegrationConfig
    t: np.ndarray
    a: np.ndarray
    b: np.ndarray
    _units: _Units = field(repr=False)
    _s: np.ndarray = field(repr=False)

    @property
    def t_start(self) -> float:
        return float(self.t[0])

    @property
    def t_end(self) -> float:
        return float(self.t[-1])

    @property
    def zero_index(self) -> int:
        return int(np.searchsorted(self.t, 0.0))

    @property
    def samples(self):
        return [(float(t), Amplitudes(complex(a), complex(b))) for t, a, b in zip(self.t, self.a, self.b)]

    @property
    def norm_drift(self) -> float:
        return float(np.max(np.abs(np.abs(self.a) ** 2 + np.abs(self.b) ** 2 - 1.0)))

    def _check_range(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        slack = 1e-12 * (self.t_end - self.t_start)
        if np.any(t < self.t_start - slack) or np.any(t > self.t_end + slack):
            raise ValueError("query time outside the integration window")
        return t

    def state(self, t):
        """Amplitudes (a, b) at time(s) ``t``; arrays in, arrays out."""
        t = self._check_range(t)
        a, b = _dense(self._units, self._s, self.a, self.b, t / self._units.time)
        if a.ndim == 0:
            return complex(a), complex(b)
        return a, b

    def derivative(self, t):
        """d/dt (a, b) from the equation of motion at the interpolated state."""
        a, b = self.state(t)
        return _rhs(self.params, np.asarray(t, dtype=float), a, b)


def _rhs(params: LzParams, t, a, b):
    g = params.alpha * t
    d = params.delta
    f = -1j / params.hbar
    return f * (0.5 * g * a + 0.5 * d * b), f * (0.5 * d * a - 0.5 * g * b)


def evolve(
    params: LzParams,
    state: Amplitudes,
    t0: float,
    t1: float,
    config: IntegrationConfig | None = None,
) -> Amplitudes:
    """Propagate ``state`` from ``t0`` to ``t1`` (forward or backward in time)."""
    config = config or IntegrationConfig()
    units = _Units.of(params)
    s0, s1 = t0 / units.time, t1 / units.time
    h_max = max(abs(s1 - s0) / _MIN_SAMPLES, 1e-300)
    _, sa, sb = _integrate_segment(units, s0, s1, state.a, state.b, config, h_max)
    return Amplitudes(sa[-1], sb[-1])


def _propagate_once(params: LzParams, config: IntegrationConfig) -> Trajectory:
    t_start, t_end = integration_window(params, config)
    bare = initial_state(params, t_start)  # validates the window
    if config.start_order == 0:
        start = bare
    else:
        start = superadiabatic_state(params, t_start, config.start_order)
    units = _Units.of(params)
    s_start, s_end = t_start / units.time, t_end / units.time
    h_max = (s_end - s_start) / _MIN_SAMPLES

    ts1, a1, b1 = _integrate_segment(units, s_start, 0.0, start.a, start.b, config, h_max)
    ts2, a2, b2 = _integrate_segment(units, 0.0, s_end, a1[-1], b1[-1], config, h_max)
    s = np.array(ts1 + ts2[1:])
    a = np.array(a1 + a2[1:], dtype=complex)
    b = np.array(b1 + b2[1:], dtype=complex)
    t = s * units.time
    t[0], t[-1] = t_start, t_end
    for arr in (s, a, b, t):
        arr.setflags(write=False)
    traj = Trajectory(params, config, t, a, b, units, s)
    drift = traj.norm_drift
    if drift > config.max_norm_drift:
        raise NormDriftExceeded(f"norm drift {drift:.3g} exceeds {config.max_norm_drift:.3g}")
    return traj


def propagate(params: LzParams, config: IntegrationConfig | None = None) -> Trajectory:
    """Integrate over the symmetric window around the crossing.

    With ``config.convergence_check`` a second run on a window twice as wide
    is compared with the first at the first run's ``t_end``; a change of the
    diabatic population above 1e-6 raises :class:`WindowNotConverged`.
    """
    config = config or IntegrationConfig()
    traj = _propagate_once(params, config)
    if config.convergence_check:
        wide_config = replace(config, window_factor=2 * config.window_factor, convergence_check=False)
        wide = _propagate_once(params, wide_config)
        _, b_wide = wide.state(traj.t_end)
        change = abs(abs(b_wide) ** 2 - abs(traj.b[-1]) ** 2)
        if change >= _CONVERGENCE_TOL:
            raise WindowNotConverged(
                f"P_d(t_end) moved by {change:.3g} when the window was doubled "
                f"(window_factor={config.window_factor})"
            )
    return traj
