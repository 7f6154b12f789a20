"""
Tunneling time across the crossover
===================================

Sweep the quickness eta = 2 hbar alpha / delta^2 from the adiabatic to the
sudden regime and compare the half-width/area tunneling time with the
closed-form limits and the empirical interpolation sqrt(delta^2/alpha^2 + 2 hbar/alpha).
"""
import numpy as np

from lztunnel.cli import SweepSpec, sweep

###############################################################################
# Diabatic basis.  Times are in units of hbar/delta; alpha is in units of
# delta^2/(2 hbar), so it equals eta.

rows = sweep(SweepSpec(alpha_min=0.01, alpha_max=1000.0, points=11), jobs=2)
print(f"{'eta':>9} {'tau':>10} {'empirical':>10} {'slow':>10} {'fast':>10}")
for r in rows:
    print(f"{r['eta']:9.3g} {r['tau']:10.4g} {r['tau_empirical']:10.4g} "
          f"{r['tau_analytic_adiabatic']:10.4g} {r['tau_analytic_sudden']:10.4g}")

###############################################################################
# The log-log slope goes from -1 (tau ~ delta/alpha) to -1/2
# (tau ~ sqrt(hbar/alpha)).

eta = np.array([r["eta"] for r in rows])
tau = np.array([r["tau"] for r in rows])
print("slopes:", np.round(np.diff(np.log(tau)) / np.diff(np.log(eta)), 3))

###############################################################################
# In the adiabatic basis both ends scale as 1/alpha and the crossover is a
# sharper kink.

rows = sweep(SweepSpec(0.01, 1000.0, 11, basis="adiabatic"), jobs=2)
tau_a = np.array([r["tau"] for r in rows])
print("adiabatic slopes:", np.round(np.diff(np.log(tau_a)) / np.diff(np.log(eta)), 3))
