"""Exact proximal operator of the piece-wise exponential (PiE) penalty.

The penalty is ``f(x) = 1 - exp(-|x|/sigma)`` and the prox problem is

    minimize  F(x; tau) = lam * f(x) + (x - tau)**2 / 2

over real ``x``. Nonzero stationary points are the roots of
``phi(x) = |tau| - x - (lam/sigma) exp(-x/sigma)``, written in closed form
with the two real branches of the Lambert W function.
"""
from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from .lambert_w import BRANCH_POINT, CLAMP_TOL, lambert_w0, lambert_wm1

__all__ = [
    "Regime",
    "Params",
    "ProxResult",
    "Thresholds",
    "RegimeError",
    "ProxDomainError",
    "objective",
    "phi",
    "x1",
    "x2",
    "x2_inverse",
    "tau_bar",
    "prox",
    "prox_elementwise",
    "TIE_RTOL",
]

TIE_RTOL = 1e-9


class Regime(str, Enum):
    """``SOFT`` when ``lam <= sigma**2``, ``HARD`` otherwise."""

    SOFT = "soft"
    HARD = "hard"


class RegimeError(ValueError):
    """Operation only defined in the other regime."""


class ProxDomainError(ValueError):
    """No real stationary point of the requested kind exists."""


@dataclass(frozen=True)
class Params:
    """Regularization weight ``lam`` and PiE shape ``sigma``, both positive."""

    lam: float
    sigma: float

    def __post_init__(self):
        for name in ("lam", "sigma"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float, np.floating)) and math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a positive finite number, got {v!r}")
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "sigma", float(self.sigma))

    @property
    def regime(self):
        return Regime.SOFT if self.lam <= self.sigma ** 2 else Regime.HARD

    @property
    def ratio(self):
        """``lam / sigma**2``."""
        return self.lam / self.sigma ** 2

    @property
    def lower(self):
        """``sigma (1 + ln(lam/sigma^2))``; the W-argument equals -1/e here."""
        # 1 + ln r <= r, so this never exceeds upper; keep rounding from saying otherwise
        return min(self.sigma * (1.0 + math.log(self.ratio)), self.upper)

    @property
    def upper(self):
        """``lam / sigma``, the soft threshold of the linearized penalty at 0."""
        return self.lam / self.sigma

    @property
    def kink(self):
        """``sigma ln(lam/sigma^2)``, where ``phi`` attains its maximum."""
        return self.sigma * math.log(self.ratio)


@dataclass(frozen=True)
class Thresholds:
    """Landmarks of the hard regime.

    ``lower <= tau_bar <= upper`` and ``x_star`` is the nonzero minimizer at
    the tie ``tau = tau_bar`` (so ``x_star == x1(tau_bar)``).
    """

    lower: float
    tau_bar: float
    upper: float
    x_star: float
    residual: float


@dataclass(frozen=True)
class ProxResult:
    """Minimizer set of the prox problem, sorted ascending."""

    points: tuple
    regime: Regime
    at_tie: bool

    def contains(self, value, atol=1e-8):
        return any(abs(value - p) <= atol for p in self.points)

    def nearest(self, value):
        return min(self.points, key=lambda p: abs(value - p))

    def __len__(self):
        return len(self.points)


def objective(x, tau, p):
    """``lam (1 - exp(-|x|/sigma)) + (x - tau)^2 / 2``."""
    return -p.lam * math.expm1(-abs(x) / p.sigma) + 0.5 * (x - tau) ** 2


def phi(x, tau, p):
    """Fixed-point residual ``tau - x - (lam/sigma) exp(-x/sigma)``."""
    return tau - x - p.upper * math.exp(-x / p.sigma)


def _w_argument(tau, p):
    # -(lam/sigma^2) exp(-tau/sigma), formed in log space to avoid overflow
    return -math.exp(math.log(p.ratio) - tau / p.sigma)


def x1(tau, p):
    """Larger root of ``phi`` (with ``|tau|`` in place of ``tau``).

    ``x1(tau) = sigma W0(-(lam/sigma^2) exp(-|tau|/sigma)) + |tau|``.

    Raises
    ------
    ProxDomainError
        When the W0 argument lies below ``-1/e``, i.e. ``|tau| < lower``.
    """
    t = abs(tau)
    a = _w_argument(t, p)
    if a < BRANCH_POINT - CLAMP_TOL:
        raise ProxDomainError(
            f"x1 undefined for |tau|={t!r} < sigma(1+ln(lam/sigma^2))={p.lower!r}")
    return p.sigma * lambert_w0(a).w + t


def x2(tau, p):
    """Smaller root of ``phi``: ``sigma W-1(-(lam/sigma^2) exp(-tau/sigma)) + tau``.

    Raises
    ------
    ProxDomainError
        Outside the W-1 domain, i.e. for ``tau < lower``.
    """
    a = _w_argument(tau, p)
    if a < BRANCH_POINT - CLAMP_TOL:
        raise ProxDomainError(
            f"x2 undefined for tau={tau!r} < sigma(1+ln(lam/sigma^2))={p.lower!r}")
    return p.sigma * lambert_wm1(a).w + tau


def x2_inverse(x0, p):
    """The ``tau`` with ``x2(tau) == x0``, namely ``x0 + (lam/sigma) exp(-x0/sigma)``.

    Defined in the hard regime for ``0 <= x0 <= sigma ln(lam/sigma^2)``,
    where it decreases from ``lam/sigma`` to ``sigma(1+ln(lam/sigma^2))``.
    """
    if p.regime is not Regime.HARD:
        raise RegimeError("x2_inverse requires lam > sigma**2")
    if not 0.0 <= x0 <= p.kink:
        raise ProxDomainError(f"x0={x0!r} outside [0, {p.kink!r}]")
    return x0 + p.upper * math.exp(-x0 / p.sigma)


def _tie_q(u):
    """``((1+u) e^{-u} - 1) / u^2``, accurate down to ``u -> 0``."""
    if u < 0.1:
        # sum_{n>=2} (-1)^{n+1} (n-1) u^{n-2} / n!
        acc = 0.0
        for n in range(14, 1, -1):
            acc = acc * u + (-1) ** (n + 1) * (n - 1) / math.factorial(n)
        return acc
    return (u * math.exp(-u) + math.expm1(-u)) / (u * u)


def _tie_g(x, p, top):
    # 1/2 + lam ((x/sigma+1) e^{-x/sigma} - 1) / x^2, with top = sqrt(2 lam)
    u = x / p.sigma
    if u < 0.1:
        return 0.5 + p.ratio * _tie_q(u)
    # same quantity regrouped so it stays accurate as x -> top
    return (0.5 * (x - top) * (x + top) + p.lam * (1.0 + u) * math.exp(-u)) / (x * x)


def tau_bar(p, max_iter=200):
    """Jump threshold of the hard-regime prox, by bisection.

    ``x_star`` is the root on ``(0, sqrt(2 lam))`` of
    ``1/2 + lam ((x/sigma + 1) e^{-x/sigma} - 1) / x^2`` and
    ``tau_bar = x_star + (lam/sigma) e^{-x_star/sigma}``.

    Raises
    ------
    RegimeError
        If ``lam <= sigma**2``.
    """
    if p.regime is not Regime.HARD:
        raise RegimeError(
            "tau_bar exists only when lam > sigma**2; otherwise the prox is "
            "continuous with threshold lam/sigma")
    top = math.sqrt(2.0 * p.lam)
    lo, hi = 1e-12 * top, top
    g_lo, g_hi = _tie_g(lo, p, top), _tie_g(hi, p, top)
    if g_hi < 0.0:
        raise ArithmeticError(f"no sign change for tau_bar bracket: g={g_lo!r}, {g_hi!r}")
    if g_lo >= 0.0:
        # lam/sigma^2 within ~1e-12 of 1: the root sits below the bracket and
        # lower, tau_bar and upper agree to rounding
        hi, g_hi = lo, g_lo
    width = 1e-13 * top
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if g_hi == 0.0 or hi - lo <= width or mid in (lo, hi):
            break
        g_mid = _tie_g(mid, p, top)
        if g_mid == 0.0:
            lo = hi = mid
            g_lo = g_hi = 0.0
            break
        if g_mid < 0.0:
            lo, g_lo = mid, g_mid
        else:
            hi, g_hi = mid, g_mid
    x_star, res = (lo, g_lo) if abs(g_lo) <= abs(g_hi) else (hi, g_hi)
    tb = x_star + p.upper * math.exp(-x_star / p.sigma)
    # the sandwich holds exactly; only rounding can push tb outside
    tb = min(max(tb, p.lower), p.upper)
    return Thresholds(p.lower, tb, p.upper, x_star, abs(res))


def prox(tau, p, thresholds=None):
    """Minimizer set of ``F(.; tau)``.

    Parameters
    ----------
    tau : float
        Input point, any real.
    p : Params
    thresholds : Thresholds, optional
        Precomputed :func:`tau_bar` result (hard regime) to skip the bisection.

    Returns
    -------
    ProxResult
        ``{0}`` below the threshold, ``{sign(tau) x1(|tau|)}`` above it and,
        in the hard regime within ``TIE_RTOL`` of ``tau_bar``, both points.
    """
    t = abs(tau)
    s = 1.0 if tau >= 0 else -1.0
    regime = p.regime
    if regime is Regime.SOFT:
        if t <= p.upper:
            return ProxResult((0.0,), regime, False)
        return ProxResult((s * x1(t, p),), regime, False)

    th = thresholds if thresholds is not None else tau_bar(p)
    tb = th.tau_bar
    if abs(t - tb) <= TIE_RTOL * tb:
        nz = s * x1(t, p)
        return ProxResult(tuple(sorted((0.0, nz))), regime, True)
    if t < tb:
        return ProxResult((0.0,), regime, False)
    return ProxResult((s * x1(t, p),), regime, False)


def prox_elementwise(tau, p):
    """Apply the prox to each entry of an array.

    At an exact tie the zero point is chosen, so the output is sparse
    wherever the problem allows.
    """
    tau = np.asarray(tau, dtype=float)
    th = tau_bar(p) if p.regime is Regime.HARD else None
    out = np.empty_like(tau)
    flat = out.reshape(-1)
    for i, t in enumerate(tau.reshape(-1)):
        res = prox(float(t), p, th)
        flat[i] = res.nearest(0.0)
    return out
