"""
The two real branches of Lambert W
==================================

Both branches meet at ``x = -1/e`` with value -1. Near that point the
square-root series is used directly; elsewhere a few Halley steps finish
the job.
"""
import math

import numpy as np

from pieprox import lambert_w0, lambert_wm1
from pieprox.lambert_w import BRANCH_POINT

for eps in (1e-14, 1e-10, 1e-6, 1e-2):
    x = BRANCH_POINT + eps
    a, b = lambert_w0(x), lambert_wm1(x)
    print(f"x = -1/e + {eps:.0e}: W0 = {a.w:.15f} ({a.iterations} it), "
          f"W-1 = {b.w:.15f} ({b.iterations} it)")

# %%
# Residuals of w e^w = x over a sweep.
xs = np.linspace(BRANCH_POINT, -1e-6, 2001)
worst = max(max(lambert_w0(x).residual, lambert_wm1(x).residual) for x in xs)
print("worst residual on [-1/e, -1e-6]:", worst)
print("W0(1) =", lambert_w0(1.0).w, " (omega constant)")
print("W-1(-2/e^2) =", lambert_wm1(-2 * math.exp(-2)).w)
