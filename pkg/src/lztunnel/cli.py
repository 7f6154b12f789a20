"""Command-line front end.

Subcommands:

    simulate  P(t) time series as CSV plus a JSON sidecar with the run record
    tau       one run record as a JSON object on standard output
    sweep     one run record per grid point as a CSV table
    limits    closed-form times for the given parameters as JSON
    compare   tau and limits side by side

By default ``--alpha`` is the sweep rate in units of delta**2/(2 hbar), so the
flag value is the quickness eta.  ``--physical`` takes ``--delta``,
``--alpha-phys`` and ``--hbar`` in user units and reports times in those units.

Floats are written with ``repr`` (shortest round-trip decimal) so identical
invocations produce identical bytes.  CSV files start with ``# schema=1``.
Errors print ``{"error": {"code": ..., "message": ...}}`` and exit nonzero.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .asymptotics import LimitKind, limit_tau, vitanov_zeta_adiabatic
from .errors import InvalidParameters, LzError
from .model import Basis, LzParams, lz_asymptote
from .probability import curve
from .propagator import IntegrationConfig, propagate
from .tunneling import empirical_time, tunneling_time

__all__ = ["RunRecord", "SweepSpec", "Spacing", "run_record", "limits", "sweep_grid", "sweep", "main"]

SCHEMA_LINE = "# schema=1"
MIN_SERIES_POINTS = 2000


class Spacing(str, Enum):
    LOG = "log"
    LINEAR = "linear"


@dataclass(frozen=True)
class SweepSpec:
    """Sweep over alpha in units of delta**2/(2 hbar)."""

    alpha_min: float
    alpha_max: float
    points: int
    spacing: Spacing = Spacing.LOG
    basis: Basis = Basis.DIABATIC

    def __post_init__(self) -> None:
        if not (0 < self.alpha_min < self.alpha_max and math.isfinite(self.alpha_max)):
            raise InvalidParameters("sweep needs 0 < alpha_min < alpha_max")
        if self.points < 2:
            raise InvalidParameters("sweep needs at least 2 points")


@dataclass(frozen=True)
class RunRecord:
    eta: float
    alpha: float
    basis: str
    t_prime: float
    tau: float
    tau_vitanov: float
    tau_empirical: float
    tau_analytic_adiabatic: float
    tau_analytic_sudden: float
    s1: float
    s2: float
    p_infinity: float
    crossing_count: int
    s2_negative: bool


RECORD_FIELDS = list(RunRecord.__dataclass_fields__)
SWEEP_HEADER = RECORD_FIELDS + ["error"]


def run_record(params: LzParams, basis: Basis | str, config: IntegrationConfig | None = None) -> RunRecord:
    """Propagate once and summarize the tunneling time in ``basis``."""
    basis = Basis.parse(basis)
    report = tunneling_time(curve(propagate(params, config), basis))
    return _record(params, basis, report)


def _record(params: LzParams, basis: Basis, report) -> RunRecord:
    return RunRecord(
        eta=params.eta,
        alpha=params.eta,
        basis=basis.value,
        t_prime=report.t_prime,
        tau=report.tau,
        tau_vitanov=report.tau_vitanov,
        tau_empirical=report.tau_empirical,
        tau_analytic_adiabatic=limit_tau(basis, LimitKind.ADIABATIC, params),
        tau_analytic_sudden=limit_tau(basis, LimitKind.SUDDEN, params),
        s1=report.s1,
        s2=report.s2,
        p_infinity=lz_asymptote(params, basis),
        crossing_count=report.diagnostics.crossing_count,
        s2_negative=report.diagnostics.s2_negative,
    )


def limits(params: LzParams, basis: Basis | str) -> dict:
    """All closed-form times for ``params`` in ``basis``."""
    basis = Basis.parse(basis)
    return {
        "eta": params.eta,
        "alpha": params.eta,
        "basis": basis.value,
        "tau_adiabatic_limit": limit_tau(basis, LimitKind.ADIABATIC, params),
        "tau_sudden_limit": limit_tau(basis, LimitKind.SUDDEN, params),
        "zeta_a_a": vitanov_zeta_adiabatic(params, scaled=True),
        "tau_vitanov_adiabatic_limit": vitanov_zeta_adiabatic(params),
        "tau_empirical": empirical_time(params),
    }


def sweep_grid(spec: SweepSpec) -> np.ndarray:
    if spec.spacing is Spacing.LOG:
        grid = np.geomspace(spec.alpha_min, spec.alpha_max, spec.points)
    else:
        grid = np.linspace(spec.alpha_min, spec.alpha_max, spec.points)
    grid[0], grid[-1] = spec.alpha_min, spec.alpha_max
    return grid


def _sweep_row(job: tuple) -> dict:
    alpha, basis, config, delta, hbar = job
    row = dict.fromkeys(SWEEP_HEADER, None)
    try:
        params = LzParams.from_eta(float(alpha), delta=delta, hbar=hbar)
        row["eta"] = row["alpha"] = params.eta
        row["basis"] = Basis.parse(basis).value
        row.update(asdict(run_record(params, basis, config)))
    except LzError as exc:
        row["error"] = f"{exc.code}: {exc}"
    return row


def sweep(
    spec: SweepSpec,
    config: IntegrationConfig | None = None,
    jobs: int = 1,
    delta: float = 1.0,
    hbar: float = 1.0,
) -> list[dict]:
    """Run every grid point; rows come back in ascending alpha whatever ``jobs`` is."""
    work = [(float(a), spec.basis, config, delta, hbar) for a in sweep_grid(spec)]
    if jobs <= 1:
        return [_sweep_row(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_sweep_row, work))


# formatting


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _json_value(value):
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    # JSON has no NaN; an undefined time is written as null
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _dumps(obj: dict) -> str:
    return json.dumps(_json_value(obj), allow_nan=False)


def write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(SCHEMA_LINE + "\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def series_grid(t_start: float, t_end: float, points: int) -> np.ndarray:
    """Uniform grid over the window with the exact t = 0 sample inserted."""
    grid = np.linspace(t_start, t_end, max(points, MIN_SERIES_POINTS))
    if not np.any(grid == 0.0):
        grid = np.insert(grid, np.searchsorted(grid, 0.0), 0.0)
    return grid


# commands


def _params(args) -> LzParams:
    if args.physical:
        if args.delta is None or args.alpha_phys is None:
            raise InvalidParameters("--physical needs --delta and --alpha-phys")
        return LzParams(delta=args.delta, alpha=args.alpha_phys, hbar=args.hbar)
    if args.alpha is None:
        raise InvalidParameters("--alpha is required (or use --physical)")
    return LzParams.from_eta(args.alpha)


def _config(args) -> IntegrationConfig:
    return IntegrationConfig(window_factor=args.window_factor, rel_tol=args.rel_tol)


def cmd_simulate(args) -> dict:
    params, config, basis = _params(args), _config(args), Basis.parse(args.basis)
    c = curve(propagate(params, config), basis)
    record = _record(params, basis, tunneling_time(c))
    t = series_grid(c.t_start, c.t_end, args.points)
    p, dp = c.p(t), c.dp_dt(t)
    out = Path(args.out)
    write_csv(out, ["t", "p", "dp_dt"], zip(t.tolist(), p.tolist(), dp.tolist()))
    out.with_suffix(".json").write_text(_dumps(asdict(record)) + "\n")
    return asdict(record)


def cmd_tau(args) -> dict:
    return asdict(run_record(_params(args), args.basis, _config(args)))


def cmd_sweep(args) -> None:
    spec = SweepSpec(
        alpha_min=args.alpha_min,
        alpha_max=args.alpha_max,
        points=args.points,
        spacing=Spacing(args.spacing),
        basis=Basis.parse(args.basis),
    )
    rows = sweep(spec, _config(args), jobs=args.jobs)
    write_csv(Path(args.out), SWEEP_HEADER, ([r[k] for k in SWEEP_HEADER] for r in rows))


def cmd_limits(args) -> dict:
    return limits(_params(args), args.basis)


def cmd_compare(args) -> dict:
    params = _params(args)
    return {
        "run": asdict(run_record(params, args.basis, _config(args))),
        "limits": limits(params, args.basis),
    }


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=float, help="sweep rate in units of delta^2/(2 hbar), i.e. eta")
    common.add_argument("--basis", choices=[b.value for b in Basis], default=Basis.DIABATIC.value)
    common.add_argument("--window-factor", type=float, default=20.0)
    common.add_argument("--rel-tol", type=float, default=1e-10)
    common.add_argument("--out", help="output path (simulate, sweep)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweep")
    common.add_argument("--physical", action="store_true", help="take delta, alpha and hbar in user units")
    common.add_argument("--delta", type=float)
    common.add_argument("--alpha-phys", type=float)
    common.add_argument("--hbar", type=float, default=1.0)

    parser = argparse.ArgumentParser(prog="lztunnel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sim = sub.add_parser("simulate", parents=[common], help="write P(t) as CSV")
    sim.add_argument("--points", type=int, default=MIN_SERIES_POINTS)
    sub.add_parser("tau", parents=[common], help="tunneling time as JSON")
    sw = sub.add_parser("sweep", parents=[common], help="tunneling time over a grid of alpha")
    sw.add_argument("--alpha-min", type=float, required=True)
    sw.add_argument("--alpha-max", type=float, required=True)
    sw.add_argument("--points", type=int, default=40)
    sw.add_argument("--spacing", choices=[s.value for s in Spacing], default=Spacing.LOG.value)
    sub.add_parser("limits", parents=[common], help="closed-form times as JSON")
    sub.add_parser("compare", parents=[common], help="tau and limits side by side")
    return parser


_COMMANDS = {
    "simulate": cmd_simulate,
    "tau": cmd_tau,
    "sweep": cmd_sweep,
    "limits": cmd_limits,
    "compare": cmd_compare,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command in ("simulate", "sweep") and not args.out:
        print(_dumps({"error": {"code": "usage", "message": "--out is required"}}))
        return 2
    try:
        result = _COMMANDS[args.command](args)
    except InvalidParameters as exc:
        print(_dumps({"error": {"code": exc.code, "message": str(exc)}}))
        return 2
    except LzError as exc:
        print(_dumps({"error": {"code": exc.code, "message": str(exc)}}))
        return 1
    except OSError as exc:
        print(_dumps({"error": {"code": "io_error", "message": str(exc)}}))
        return 1
    if result is not None:
        print(_dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
