"""Brute-force ground truth for the PiE prox problem.

Nothing here uses the Lambert W closed forms: the prox is found by dense
grid search with local refinement, and the jump threshold by comparing
objective values at 0 and at the nonzero stationary point located with a
bracketing root finder.
"""
from dataclasses import dataclass
import math

import numpy as np
from scipy.optimize import brentq

from .prox import Regime, RegimeError

__all__ = ["GridSpec", "brute_force_prox", "brute_force_tau_bar"]

CLUSTER_TOL = 1e-6
VALUE_TOL = 1e-12


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid on ``[lo, hi]`` with ``n`` samples and zoom rounds."""

    lo: float
    hi: float
    n: int = 200_001
    refine_rounds: int = 4

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("GridSpec needs lo < hi")
        if self.n < 1000:
            raise ValueError("GridSpec needs n >= 1000")
        if self.refine_rounds < 2:
            raise ValueError("GridSpec needs refine_rounds >= 2")

    @classmethod
    def around(cls, tau, **kw):
        a = abs(tau) + 1.0
        return cls(-a, a, **kw)


def _objective(x, tau, p):
    return -p.lam * np.expm1(-np.abs(x) / p.sigma) + 0.5 * (x - tau) ** 2


def _local_minima(v):
    idx = []
    n = len(v)
    for i in np.flatnonzero((v[1:-1] <= v[:-2]) & (v[1:-1] <= v[2:])) + 1:
        idx.append(int(i))
    if v[0] <= v[1]:
        idx.append(0)
    if v[-1] <= v[-2]:
        idx.append(n - 1)
    return idx


def _refine(c, tau, p, g):
    width = g.hi - g.lo
    for _ in range(g.refine_rounds):
        width /= 100.0
        xs = np.linspace(c - width / 2, c + width / 2, g.n)
        c = float(xs[np.argmin(_objective(xs, tau, p))])
    return c


def brute_force_prox(tau, p, grid=None):
    """Global minimizers of ``F(.; tau)`` by exhaustive search.

    Parameters
    ----------
    tau : float
    p : Params
    grid : GridSpec, optional
        Defaults to 200001 points on ``[-|tau|-1, |tau|+1]`` and 4 zoom rounds.

    Returns
    -------
    list of float
        One or two cluster representatives, ascending.
    """
    g = grid if grid is not None else GridSpec.around(tau)
    xs = np.linspace(g.lo, g.hi, g.n)
    vals = _objective(xs, tau, p)
    # F has at most two local minima; the cap only guards against rounding noise
    cands = sorted(set(_local_minima(vals)), key=lambda i: vals[i])[:16]
    refined = [_refine(float(xs[i]), tau, p, g) for i in cands]
    fvals = [float(_objective(np.array(r), tau, p)) for r in refined]
    best = min(fvals)
    keep = sorted(r for r, f in zip(refined, fvals) if f - best <= VALUE_TOL)

    clusters = []
    for r in keep:
        if clusters and r - clusters[-1][-1] <= CLUSTER_TOL:
            clusters[-1].append(r)
        else:
            clusters.append([r])
    reps = []
    for cl in clusters:
        # the member with the lowest objective represents the cluster
        reps.append(min(cl, key=lambda r: float(_objective(np.array(r), tau, p))))
    return reps


def brute_force_tau_bar(p, tol=1e-13):
    """Input where ``F(0)`` and ``F`` at the nonzero stationary point tie.

    Bisection on ``h(tau) = F(x1(tau); tau) - F(0; tau)`` over
    ``[sigma(1+ln(lam/sigma^2)), lam/sigma]``; ``x1(tau)`` is found with
    Brent's method on the bracket ``[sigma ln(lam/sigma^2), tau]``.
    """
    if p.regime is not Regime.HARD:
        raise RegimeError("brute_force_tau_bar requires lam > sigma**2")
    lam, sig = p.lam, p.sigma
    kink = sig * math.log(lam / sig ** 2)

    def stationary(t):
        f = lambda z: t - z - (lam / sig) * math.exp(-z / sig)
        if f(kink) <= 0.0:
            return kink
        return brentq(f, kink, t, xtol=1e-15, rtol=1e-15, maxiter=500)

    def h(t):
        z = stationary(t)
        return float(_objective(np.array(z), t, p) - _objective(np.array(0.0), t, p))

    lo, hi = sig * (1.0 + math.log(lam / sig ** 2)), lam / sig
    h_lo, h_hi = h(lo), h(hi)
    if h_lo <= 0.0:
        return lo
    if h_hi >= 0.0:
        return hi
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        h_mid = h(mid)
        if abs(h_mid) <= tol:
            return mid
        if h_mid > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
