"""Scalar iteratively reweighted l1 (IRL1) for the PiE prox problem.

For ``tau > 0`` each IRL1 step solves a weighted soft-thresholding problem,
which collapses to the map

    x  ->  max(0, tau - (lam/sigma) exp(-x/sigma)).

Its limit depends on the starting point. This module runs the map,
predicts the limit in closed form, maps out the inputs ``tau`` for which
the limit is a critical point but not a global minimizer, and supplies an
initialization that always lands in the prox set.
"""
from dataclasses import dataclass
from enum import Enum
import math

from .prox import (
    Params,
    Regime,
    prox,
    tau_bar,
    x1,
    x2,
    x2_inverse,
)

__all__ = [
    "LimitKind",
    "Trajectory",
    "LimitPrediction",
    "Interval",
    "RegionReport",
    "PreconditionError",
    "irl1_step",
    "irl1_run",
    "iterate_errors",
    "predict_limit",
    "deviation_region",
    "adaptive_init",
    "error_bounds",
    "qlinear_rate",
    "DEFAULT_TOL",
    "DEFAULT_MAX_ITER",
    "KNIFE_EDGE_TOL",
]

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 10_000
KNIFE_EDGE_TOL = 1e-12
MEMBERSHIP_TOL = 1e-8

# trajectory storage: dense prefix, then every STRIDE-th iterate
DENSE_PREFIX = 1_000
STRIDE = 100


class PreconditionError(ValueError):
    """Inputs outside the region where a bound or rate is defined."""


class LimitKind(str, Enum):
    ZERO = "zero"
    X1 = "x1"
    X2 = "x2"


@dataclass(frozen=True)
class Trajectory:
    """Recorded IRL1 run.

    ``iterates[j]`` is the iterate with index ``indices[j]``. All iterates up
    to index 1000 are kept, then every 100th and always the final two.
    """

    iterates: tuple
    indices: tuple
    limit: float
    converged: bool
    iterations: int
    hit_zero_at: object = None

    def __len__(self):
        return len(self.iterates)


@dataclass(frozen=True)
class LimitPrediction:
    value: float
    kind: LimitKind
    in_prox_set: bool


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    lo_closed: bool
    hi_closed: bool

    def __contains__(self, t):
        above = t >= self.lo if self.lo_closed else t > self.lo
        below = t <= self.hi if self.hi_closed else t < self.hi
        return above and below

    def __str__(self):
        if self.lo == self.hi and self.lo_closed and self.hi_closed:
            return f"{{{self.lo:.6g}}}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo:.6g}, {self.hi:.6g}{right}"


@dataclass(frozen=True)
class RegionReport:
    """Inputs ``tau > 0`` where IRL1 from ``x0`` misses the prox set.

    ``case`` names the branch of the classification: ``"soft"`` (never
    deviates), or ``"ii"``..``"v"`` in the hard regime depending on where
    ``x0`` sits relative to ``x2(tau_bar)`` and ``sigma ln(lam/sigma^2)``.
    """

    params: Params
    x0: float
    deviation_intervals: tuple
    case: str
    landmarks: dict

    def contains(self, tau):
        return any(tau in iv for iv in self.deviation_intervals)


def irl1_step(x, tau, p):
    """One IRL1 update ``max(0, tau - (lam/sigma) exp(-x/sigma))``."""
    return max(0.0, tau - p.upper * math.exp(-x / p.sigma))


def irl1_run(x0, tau, p, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Iterate the IRL1 map from ``x0`` until successive iterates agree.

    Parameters
    ----------
    x0 : float
        Starting point, ``x0 >= 0``.
    tau : float
        Input of the prox problem, ``tau > 0``.
    p : Params
    tol : float
        Stop once ``|x[k+1] - x[k]| <= tol``.
    max_iter : int
        Iteration cap; hitting it leaves ``converged`` False.

    Returns
    -------
    Trajectory
    """
    if x0 < 0:
        raise ValueError("IRL1 needs x0 >= 0")
    if tol <= 0 or max_iter < 1:
        raise ValueError("need tol > 0 and max_iter >= 1")
    x = float(x0)
    iterates, indices = [x], [0]
    hit_zero = 0 if x == 0.0 else None
    converged = False
    k = 0
    prev = x
    while k < max_iter:
        prev = x
        x = irl1_step(x, tau, p)
        k += 1
        if hit_zero is None and x == 0.0:
            hit_zero = k
        if k <= DENSE_PREFIX or k % STRIDE == 0:
            iterates.append(x)
            indices.append(k)
        if abs(x - prev) <= tol:
            converged = True
            break
    if indices[-1] != k:
        if indices[-1] != k - 1:
            iterates.append(prev)
            indices.append(k - 1)
        iterates.append(x)
        indices.append(k)
    return Trajectory(tuple(iterates), tuple(indices), x, converged, k, hit_zero)


def iterate_errors(x0, tau, p, k_max):
    """Errors ``x[k] - x1(tau)`` for ``k = 0..k_max``, kept to full relative precision.

    Subtracting the limit from plain iterates loses everything once the error
    drops below ~1e-16 * x1. Writing ``x[k] = x1 + e[k]`` and using
    ``x1 = tau - (lam/sigma) exp(-x1/sigma)`` gives the equivalent recursion

        e[k+1] = max(-x1, -(lam/sigma) exp(-x1/sigma) * expm1(-e[k]/sigma))

    which is what is evaluated here.
    """
    xs = x1(tau, p)
    c = p.upper * math.exp(-xs / p.sigma)
    e = float(x0) - xs
    out = [e]
    for _ in range(k_max):
        e = max(-xs, -c * math.expm1(-e / p.sigma))
        out.append(e)
    return out


def _in_prox(value, tau, p, th):
    return prox(tau, p, th).contains(value, MEMBERSHIP_TOL)


def predict_limit(x0, tau, p, thresholds=None):
    """Limit of IRL1 from ``x0`` without iterating.

    Soft regime: 0 for ``tau <= lam/sigma``, else ``x1(tau)``. Hard regime:
    0 below ``sigma(1+ln(lam/sigma^2))``, ``x1(tau)`` above ``lam/sigma``, and
    in between the basin of ``x0`` relative to the unstable fixed point
    ``x2(tau)`` decides (``x0`` within ``KNIFE_EDGE_TOL`` of ``x2`` stays put).
    """
    if x0 < 0 or tau <= 0:
        raise ValueError("predict_limit needs x0 >= 0 and tau > 0")
    th = thresholds
    if p.regime is Regime.HARD and th is None:
        th = tau_bar(p)

    if p.regime is Regime.SOFT:
        if tau <= p.upper:
            value, kind = 0.0, LimitKind.ZERO
        else:
            value, kind = x1(tau, p), LimitKind.X1
    elif tau < p.lower:
        value, kind = 0.0, LimitKind.ZERO
    elif tau > p.upper:
        value, kind = x1(tau, p), LimitKind.X1
    else:
        fixed = x2(tau, p)
        if x0 == 0.0 or fixed <= KNIFE_EDGE_TOL and x0 <= KNIFE_EDGE_TOL:
            # zero is absorbing for tau <= lam/sigma
            value, kind = 0.0, LimitKind.ZERO
        elif abs(x0 - fixed) <= KNIFE_EDGE_TOL:
            value, kind = fixed, LimitKind.X2
        elif x0 > fixed:
            value, kind = x1(tau, p), LimitKind.X1
        else:
            value, kind = 0.0, LimitKind.ZERO
    return LimitPrediction(value, kind, _in_prox(value, tau, p, th))


def _landmarks(p, th):
    if th is None:
        return {"upper": p.upper}
    # x2(tau_bar) lies in [0, kink]; rounding near lam = sigma^2 can leave it a hair outside
    knife = min(max(x2(th.tau_bar, p), 0.0), max(p.kink, 0.0))
    return {
        "lower": th.lower,
        "kink": p.kink,
        "x2_tau_bar": knife,
        "tau_bar": th.tau_bar,
        "upper": th.upper,
    }


def deviation_region(x0, p, thresholds=None):
    """Inputs ``tau > 0`` for which IRL1 started at ``x0`` converges outside the prox.

    Returns
    -------
    RegionReport
        With ``L = sigma(1+ln(lam/sigma^2))`` and ``s = sigma ln(lam/sigma^2)``:

        * soft regime: no interval;
        * ``x0 >= s``: ``[L, tau_bar)`` (case ii);
        * ``x2(tau_bar) < x0 < s``: ``[x2^{-1}(x0), tau_bar)`` (case iii);
        * ``x0 == x2(tau_bar)``: the single point ``tau_bar`` (case iv);
        * ``0 <= x0 < x2(tau_bar)``: ``(tau_bar, x2^{-1}(x0)]`` (case v).
    """
    if x0 < 0:
        raise ValueError("deviation_region needs x0 >= 0")
    if p.regime is Regime.SOFT:
        return RegionReport(p, x0, (), "soft", _landmarks(p, None))
    th = thresholds if thresholds is not None else tau_bar(p)
    marks = _landmarks(p, th)
    tb, knife = th.tau_bar, marks["x2_tau_bar"]
    if x0 >= p.kink:
        iv, case = Interval(th.lower, tb, True, False), "ii"
    elif abs(x0 - knife) <= KNIFE_EDGE_TOL:
        iv, case = Interval(tb, tb, True, True), "iv"
    elif x0 > knife:
        iv, case = Interval(x2_inverse(x0, p), tb, True, False), "iii"
    else:
        iv, case = Interval(tb, x2_inverse(x0, p), False, True), "v"
    return RegionReport(p, x0, (iv,), case, marks)


def adaptive_init(tau, p, thresholds=None):
    """Starting point for which IRL1 provably converges into the prox set.

    0 when ``tau`` is at or below the prox threshold (``lam/sigma`` in the
    soft regime, ``tau_bar`` in the hard regime), ``tau`` otherwise.
    """
    if tau <= 0:
        raise ValueError("adaptive_init needs tau > 0")
    if p.regime is Regime.SOFT:
        return 0.0 if tau <= p.upper else float(tau)
    th = thresholds if thresholds is not None else tau_bar(p)
    return 0.0 if tau <= th.tau_bar else float(tau)


def _check_bound_region(tau, p, thresholds):
    if p.regime is Regime.SOFT:
        ok = tau > p.upper
        where = "lam/sigma"
    else:
        th = thresholds if thresholds is not None else tau_bar(p)
        ok = tau > th.tau_bar
        where = "tau_bar"
    if not ok:
        raise PreconditionError(f"need tau > {where} (got tau={tau!r})")


def error_bounds(k, tau, p, thresholds=None):
    """Geometric bracket on ``x[k] - x1(tau)`` for IRL1 started at ``x0 = tau``.

    Returns ``(lower, upper)`` with
    ``lower = (r e^{-tau/sigma})^k (tau - x1)`` and
    ``upper = (r e^{-x1/sigma})^k (tau - x1)``, ``r = lam/sigma^2``.
    """
    if k < 1:
        raise PreconditionError("k must be >= 1")
    _check_bound_region(tau, p, thresholds)
    xs = x1(tau, p)
    gap = tau - xs
    lo_base = p.ratio * math.exp(-tau / p.sigma)
    hi_base = p.ratio * math.exp(-xs / p.sigma)
    return lo_base ** k * gap, hi_base ** k * gap


def qlinear_rate(tau, p, thresholds=None):
    """Asymptotic contraction ``(lam/sigma^2) exp(-x1(tau)/sigma)`` of IRL1 near ``x1``."""
    _check_bound_region(tau, p, thresholds)
    return p.ratio * math.exp(-x1(tau, p) / p.sigma)
