"""
Error of the adaptive start
===========================

Above the prox threshold IRL1 starts at ``tau`` and the error
``x[k] - x1(tau)`` sits strictly between two geometric sequences. Below it
the start is 0 and the error is exactly 0. This script prints the bracket
and the observed rate, and saves ``error_decay.png`` if matplotlib is
available.
"""
import numpy as np

from pieprox import Params, error_bounds, iterate_errors, qlinear_rate

p = Params(1.0, 2.0)
tau = 1.0

# %%
# The bracket for the first few steps.
errs = iterate_errors(tau, tau, p, 30)
for k in range(1, 9):
    lo, hi = error_bounds(k, tau, p)
    print(f"k={k}: {lo:.3e} < {errs[k]:.3e} < {hi:.3e}")

# %%
# Consecutive ratios settle on (lam/sigma^2) exp(-x1/sigma). The errors are
# far below machine epsilon by k = 30, which is why they are propagated as
# errors rather than as differences of iterates.
print("rate   ", qlinear_rate(tau, p))
print("e31/e30", iterate_errors(tau, tau, p, 31)[31] / errs[30])

# %%
# Error curves over tau for a few k.
taus = np.linspace(0.01, 1.5, 150)
curves = {}
for k in (1, 2, 3, 4):
    curves[k] = [iterate_errors(t, t, p, k)[k] if t > p.upper else 0.0 for t in taus]

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for k, c in curves.items():
        ax.plot(taus, c, label=f"k={k}")
    ax.set_xlabel("tau")
    ax.set_ylabel("x[k] - prox")
    ax.legend()
    fig.tight_layout()
    fig.savefig("error_decay.png", dpi=120)
    print("saved error_decay.png")
