"""
Where IRL1 misses the prox
==========================

With ``lam=2, sigma=1`` IRL1 started at ``x0 = 1`` settles on the nonzero
fixed point for every ``tau`` in ``[1 + ln 2, tau_bar)``, while the true
prox there is 0. Starting at 0 below ``tau_bar`` and at ``tau`` above it
removes the gap.
"""
import numpy as np

from pieprox import Params, adaptive_init, deviation_region, irl1_run, prox, tau_bar

p = Params(2.0, 1.0)
th = tau_bar(p)

# %%
# The predicted interval for x0 = 1.
rep = deviation_region(1.0, p, th)
print("case", rep.case, "interval", rep.deviation_intervals[0])

# %%
# Check it by running the iteration on a grid of inputs.
taus = np.linspace(0.05, 3.0, 60)
print(f"{'tau':>7} {'limit x0=1':>12} {'limit adaptive':>15} {'prox':>22}")
for t in taus:
    fixed = irl1_run(1.0, t, p).limit
    adapt = irl1_run(adaptive_init(t, p, th), t, p).limit
    res = prox(t, p, th)
    flag = "  <- deviates" if not res.contains(fixed, 1e-7) else ""
    pts = ", ".join(f"{x:.6f}" for x in res.points)
    print(f"{t:7.3f} {fixed:12.6f} {adapt:15.6f} {pts:>22}{flag}")

# %%
# Interval map over starting points. Small x0 trades the deviation below
# tau_bar for one above it.
knife = rep.landmarks["x2_tau_bar"]
for x0 in (0.0, 0.2, knife, 0.5, 1.0):
    r = deviation_region(x0, p, th)
    print(f"x0={x0:.6f}: case {r.case:>3}  {r.deviation_intervals[0]}")
