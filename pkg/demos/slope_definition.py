"""
Where the slope definition breaks down
======================================

Vitanov's time P(inf)/P'(0) uses the slope at the crossing as the rate of
the transition.  In the adiabatic basis and a slow sweep P(inf) is
exponentially small while the peak is not, so the time collapses to zero.
The half-width/area time keeps growing as 1/alpha.
"""
from lztunnel import LzParams, adiabatic_curve, propagate, tunneling_time
from lztunnel.asymptotics import vitanov_zeta_adiabatic

for eta in (0.4, 0.2, 0.1, 0.05):
    params = LzParams.from_eta(eta)
    report = tunneling_time(adiabatic_curve(propagate(params)))
    print(
        f"eta={eta:<5} tau={report.tau:9.4f}  P(inf)/P'(0)={report.tau_vitanov:.3e}"
        f"  closed form={vitanov_zeta_adiabatic(params):.3e}  S2<0: {report.diagnostics.s2_negative}"
    )

###############################################################################
# Away from the slow limit both definitions are finite but still disagree;
# here the slope at t = 0 gives the longer time.

report = tunneling_time(adiabatic_curve(propagate(LzParams.from_eta(1.425))))
print(f"eta=1.425 tau={report.tau:.4f} P(inf)/P'(0)={report.tau_vitanov:.4f}")
