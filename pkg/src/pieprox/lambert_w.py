"""Real branches of the Lambert W function.

``W0`` is the branch with ``W(x) >= -1`` (defined for ``x >= -1/e``) and
``W-1`` the branch with ``W(x) <= -1`` (defined for ``-1/e <= x < 0``).
Both are evaluated by Halley iteration from a branch-specific starting
guess, with a square-root series at the branch point.
"""
from dataclasses import dataclass
import math

__all__ = [
    "BRANCH_POINT",
    "BranchValue",
    "LambertDomainError",
    "lambert_w0",
    "lambert_wm1",
]

BRANCH_POINT = -math.exp(-1.0)
# 1/e - fl(1/e)
_INV_E_LO = -1.2428753672788363e-17

# inputs this far below -1/e are clamped onto the branch point
CLAMP_TOL = 1e-15
# below this distance from -1/e the series is more accurate than Halley
SERIES_ONLY = 1e-10
RESIDUAL_RTOL = 1e-12
MAX_ITER = 50

# W(x) = -1 + p - p^2/3 + 11/72 p^3 - ... with p = +-sqrt(2(e x + 1))
_BRANCH_SERIES = (
    -1.0,
    1.0,
    -1.0 / 3.0,
    11.0 / 72.0,
    -43.0 / 540.0,
    769.0 / 17280.0,
    -221.0 / 8505.0,
)


class LambertDomainError(ValueError):
    """Argument outside the real domain of the requested branch."""


@dataclass(frozen=True)
class BranchValue:
    """Value of a Lambert W branch together with its diagnostics.

    Attributes
    ----------
    w : float
        Branch value.
    residual : float
        ``|w * exp(w) - x|``.
    iterations : int
        Halley iterations used (0 when the series was exact enough).
    """

    w: float
    residual: float
    iterations: int

    def __float__(self):
        return self.w


def _residual(w, x):
    return abs(w * math.exp(w) - x)


def _branch_series(x, sign):
    # e*x + 1 = e*(x + 1/e); the subtraction below is exact near -1/e
    d = (x - BRANCH_POINT) + _INV_E_LO
    p = sign * math.sqrt(max(0.0, 2.0 * math.e * d))
    # Horner
    acc = 0.0
    for c in reversed(_BRANCH_SERIES):
        acc = acc * p + c
    return acc


def _check_domain(x, upper=None):
    if math.isnan(x):
        raise LambertDomainError("Lambert W is undefined for NaN")
    if x < BRANCH_POINT - CLAMP_TOL:
        raise LambertDomainError(f"x={x!r} is below the branch point -1/e")
    if upper is not None and x >= upper:
        raise LambertDomainError(f"x={x!r} is outside [-1/e, 0) required by W-1")


def _halley(w, x, on_branch):
    """Polish ``w`` with Halley's method, keeping it on the requested branch.

    ``on_branch(w)`` returns False when a step crossed ``w = -1``; that step
    is replaced by the midpoint towards the branch point.
    """
    it = 0
    for it in range(MAX_ITER):
        ew = math.exp(w)
        f = w * ew - x
        # residual at rounding level; near w = -1 the step itself only jitters
        if abs(f) <= 4.0 * 2.2e-16 * abs(x):
            break
        wp1 = w + 1.0
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        w_new = w - f / denom
        if not on_branch(w_new):
            w_new = 0.5 * (w - 1.0)
        if abs(w_new - w) <= 4.0 * 2.2e-16 * (1.0 + abs(w_new)):
            w = w_new
            break
        w = w_new
    return w, it


def _accept(w, x, iterations):
    res = _residual(w, x)
    if res > RESIDUAL_RTOL * max(1.0, abs(x)):
        raise ArithmeticError(
            f"Lambert W did not reach tolerance at x={x!r} (residual {res:.3e})")
    return BranchValue(w, res, iterations)


def lambert_w0(x):
    """Principal branch ``W0(x)``, the solution ``w >= -1`` of ``w e^w = x``.

    Parameters
    ----------
    x : float
        Argument, ``x >= -1/e``. Values up to ``1e-15`` below ``-1/e`` are
        treated as the branch point.

    Returns
    -------
    BranchValue

    Raises
    ------
    LambertDomainError
        If ``x < -1/e - 1e-15`` or ``x`` is NaN.

    Examples
    --------
    >>> lambert_w0(math.e).w
    1.0
    """
    x = float(x)
    _check_domain(x)
    if x <= BRANCH_POINT:
        return BranchValue(-1.0, _residual(-1.0, BRANCH_POINT), 0)
    if x == 0.0:
        return BranchValue(0.0, 0.0, 0)
    if math.isinf(x):
        return BranchValue(math.inf, 0.0, 0)

    eps = x - BRANCH_POINT
    if eps < SERIES_ONLY:
        w = _branch_series(x, 1.0)
        return _accept(max(w, -1.0), x, 0)
    if eps < 0.05:
        w = _branch_series(x, 1.0)
    else:
        # Winitzki's approximation, good to a few percent on x > -0.32
        l1 = math.log1p(x)
        w = l1 * (1.0 - math.log1p(l1) / (2.0 + l1))
    w, it = _halley(w, x, lambda v: v > -1.0)
    return _accept(w, x, it)


def lambert_wm1(x):
    """Lower branch ``W-1(x)``, the solution ``w <= -1`` of ``w e^w = x``.

    Parameters
    ----------
    x : float
        Argument in ``[-1/e, 0)``, with the same clamp at ``-1/e`` as
        :func:`lambert_w0`.

    Returns
    -------
    BranchValue

    Raises
    ------
    LambertDomainError
        If ``x >= 0``, ``x < -1/e - 1e-15`` or ``x`` is NaN.
    """
    x = float(x)
    _check_domain(x, upper=0.0)
    if x <= BRANCH_POINT:
        return BranchValue(-1.0, _residual(-1.0, BRANCH_POINT), 0)

    eps = x - BRANCH_POINT
    if eps < SERIES_ONLY:
        w = _branch_series(x, -1.0)
        return _accept(min(w, -1.0), x, 0)
    if x < -0.25:
        w = _branch_series(x, -1.0)
    else:
        # asymptote at 0-: ln(-x) - ln(-ln(-x)) + ...
        l1 = math.log(-x)
        l2 = math.log(-l1)
        w = l1 - l2 + l2 / l1
    w, it = _halley(w, x, lambda v: v < -1.0)
    return _accept(w, x, it)
