import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pieprox.lambert_w import (
    BRANCH_POINT,
    LambertDomainError,
    lambert_w0,
    lambert_wm1,
)


def bisect_w(x, lo, hi):
    """Independent reference: bisection on w e^w = x."""
    f = lambda w: w * math.exp(w) - x
    f_lo = f(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm > 0) == (f_lo > 0):
            lo, f_lo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def residual_ok(v, x):
    return v.residual <= 1e-12 * max(1.0, abs(x))


class TestW0:
    def test_zero(self):
        assert lambert_w0(0.0).w == 0.0

    def test_branch_point(self):
        assert lambert_w0(-1 / math.e).w == -1.0
        assert lambert_w0(BRANCH_POINT).w == -1.0

    def test_e(self):
        assert lambert_w0(math.e).w == pytest.approx(1.0, abs=1e-15)

    def test_against_bisection(self):
        # value frozen from a 40-digit bisection; the float bisection must agree
        ref = bisect_w(-0.15163, -1.0, 0.0)
        assert ref == pytest.approx(-0.1818747120874775, abs=1e-14)
        assert lambert_w0(-0.15163).w == pytest.approx(ref, abs=1e-14)

    def test_clamp_just_below_branch_point(self):
        assert lambert_w0(BRANCH_POINT - 5e-16).w == -1.0

    def test_domain_error(self):
        with pytest.raises(LambertDomainError):
            lambert_w0(BRANCH_POINT - 1e-14)
        with pytest.raises(LambertDomainError):
            lambert_w0(float("nan"))

    @pytest.mark.parametrize("x", [1e-300, 1e-8, 0.5, 10.0, 1e5, 1e100, 1e300])
    def test_positive_range(self, x):
        v = lambert_w0(x)
        assert residual_ok(v, x)
        assert v.w > 0

    def test_near_branch_point_series(self):
        # 1e-12 above -1/e: reference from 40-digit arithmetic
        v = lambert_w0(BRANCH_POINT + 1e-12)
        assert v.w == pytest.approx(-0.9999976683981106, abs=1e-13)
        assert v.iterations == 0


class TestWm1:
    def test_branch_point(self):
        assert lambert_wm1(BRANCH_POINT).w == -1.0

    def test_minus_two(self):
        assert lambert_wm1(-2 * math.exp(-2)).w == pytest.approx(-2.0, abs=1e-14)

    def test_against_bisection(self):
        ref = bisect_w(-0.1, -50.0, -1.0)
        assert ref == pytest.approx(-3.577152063957297, abs=1e-13)
        assert lambert_wm1(-0.1).w == pytest.approx(ref, abs=1e-13)

    @pytest.mark.parametrize("x", [0.0, 1e-3, 1.0, BRANCH_POINT - 1e-13])
    def test_domain_error(self, x):
        with pytest.raises(LambertDomainError):
            lambert_wm1(x)

    def test_tiny_negative(self):
        v = lambert_wm1(-1e-300)
        assert v.w == pytest.approx(-697.3227762954601, rel=1e-14)

    def test_near_branch_point_series(self):
        v = lambert_wm1(BRANCH_POINT + 1e-12)
        assert v.w == pytest.approx(-1.0000023316055138, abs=1e-13)


@settings(max_examples=300)
@given(st.floats(min_value=BRANCH_POINT, max_value=1e12))
def test_w0_identity(x):
    v = lambert_w0(x)
    assert residual_ok(v, x)
    assert v.w >= -1.0


@settings(max_examples=300)
@given(st.floats(min_value=BRANCH_POINT, max_value=-1e-300))
def test_wm1_identity(x):
    v = lambert_wm1(x)
    assert residual_ok(v, x)
    assert v.w <= -1.0


@settings(max_examples=300)
@given(st.floats(min_value=BRANCH_POINT, max_value=-1e-300))
def test_branch_separation(x):
    w0, wm1 = lambert_w0(x).w, lambert_wm1(x).w
    assert w0 >= -1.0 >= wm1
    if x > BRANCH_POINT + 1e-12:
        assert w0 > wm1


def test_monotonicity_sorted_samples():
    rng = np.random.default_rng(7)
    xs = np.sort(rng.uniform(BRANCH_POINT, 0.0, 5000))
    xs = xs[xs < 0]
    w0 = np.array([lambert_w0(x).w for x in xs])
    wm1 = np.array([lambert_wm1(x).w for x in xs])
    assert np.all(np.diff(w0) > 0)
    assert np.all(np.diff(wm1) < 0)


@settings(max_examples=300)
@given(st.floats(min_value=-1.0, max_value=10.0))
def test_w0_round_trip(w):
    # w e^w is too flat at w = -1 to invert to 1e-10; stay a little away
    if abs(w + 1.0) < 1e-5:
        w = -1.0 + 1e-5
    assert lambert_w0(w * math.exp(w)).w == pytest.approx(w, abs=1e-10)


@settings(max_examples=300)
@given(st.floats(min_value=-30.0, max_value=-1.0))
def test_wm1_round_trip(w):
    if abs(w + 1.0) < 1e-5:
        w = -1.0 - 1e-5
    assert lambert_wm1(w * math.exp(w)).w == pytest.approx(w, abs=1e-10)


def test_round_trip_exact_branch_point():
    assert lambert_w0(-1.0 * math.exp(-1.0)).w == -1.0
    assert lambert_wm1(-1.0 * math.exp(-1.0)).w == -1.0
