"""
The PiE prox in both regimes
============================

The prox of ``lam * (1 - exp(-|x|/sigma))`` is a continuous threshold when
``lam <= sigma**2`` and jumps from 0 to a nonzero value when
``lam > sigma**2``. This script tabulates both shapes and, if matplotlib is
installed, saves ``prox_operator.png``.
"""
import numpy as np

from pieprox import Params, prox_elementwise, tau_bar

soft = Params(1.0, 2.0)
hard = Params(2.0, 1.0)
taus = np.linspace(-3.0, 3.0, 601)

# %%
# Soft regime: everything up to lam/sigma is set to zero, and the output
# leaves zero continuously.
y_soft = prox_elementwise(taus, soft)
print("soft threshold lam/sigma =", soft.upper)
print("largest |tau| mapped to 0:", np.abs(taus[y_soft == 0]).max())

# %%
# Hard regime: the output jumps at tau_bar, which sits between
# sigma(1 + ln(lam/sigma^2)) and lam/sigma.
th = tau_bar(hard)
y_hard = prox_elementwise(taus, hard)
print(f"tau_bar = {th.tau_bar:.10f} in [{th.lower:.6f}, {th.upper:.6f}]")
print(f"jump size at tau_bar: {th.x_star:.10f}")

# %%
# Plot, when matplotlib is around.
try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(1, 2, figsize=(9, 3.5), sharey=True)
    ax[0].plot(taus, y_soft)
    ax[0].set_title("lam=1, sigma=2")
    ax[1].plot(taus, y_hard, ".", ms=2)
    ax[1].axvline(th.tau_bar, ls=":", c="gray")
    ax[1].set_title("lam=2, sigma=1")
    for a in ax:
        a.plot(taus, taus, c="lightgray", lw=0.8)
        a.set_xlabel("tau")
    ax[0].set_ylabel("prox")
    fig.tight_layout()
    fig.savefig("prox_operator.png", dpi=120)
    print("saved prox_operator.png")
