"""
Probability curves in both bases
================================

Propagate the two-level system through the avoided crossing and look at the
transition probability in the diabatic basis (|b|^2) and in the adiabatic
basis (population of the upper instantaneous eigenstate).
"""
import numpy as np

from lztunnel import LzParams, adiabatic_curve, diabatic_curve, propagate

###############################################################################
# A moderate sweep: the diabatic probability is step-like, rising through
# about 1/2 at the crossing, with ripples that decay as 1/t afterwards.

traj = propagate(LzParams.from_eta(0.2565))
pd = diabatic_curve(traj)
for t in (-20.0, -5.0, 0.0, 5.0, 20.0):
    print(f"t = {t:6.1f}   P_d = {pd.p(t):.5f}")
print("closed-form P_d(inf):", pd.p_infinity)

###############################################################################
# Slow sweep, adiabatic basis: the upper level is only borrowed near the
# crossing, so P_a is a single peak of height eta^2/16 and its final value
# exp(-pi/eta) is negligible.

pa = adiabatic_curve(propagate(LzParams.from_eta(0.10)))
print(f"P_a(0) = {pa.p0:.4e}  (eta^2/16 = {0.1**2 / 16:.4e})")
print(f"P_a(inf) = {pa.p_infinity:.3e}")

###############################################################################
# The curve is queryable anywhere in the window, together with its exact
# derivative from the equations of motion.

t = np.linspace(-40, 40, 9)
print(np.column_stack([t, pa.p(t), pa.dp_dt(t)]))
