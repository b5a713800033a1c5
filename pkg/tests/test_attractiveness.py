import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kellyfreq.attractiveness import (
    b_min,
    b_min_bisection,
    b_min_lambert,
    bernoulli_threshold,
    lambert_w_m1,
    theta,
    uniform_theta,
)
from kellyfreq.pmf import ReturnPmf, bernoulli_pmf, uniform_pmf

from oracles import mp_lambert_m1

A_GRID = [round(-0.1 * i, 1) for i in range(1, 10)]


def test_theta_boundary_bernoulli():
    rep = theta(bernoulli_pmf(0.75, 0.5))
    assert rep.theta == pytest.approx(1.0, abs=1e-15)
    assert rep.satisfied


def test_theta_arbitrage():
    rep = theta(ReturnPmf.from_atoms([(0.05, 0.5), (0.4, 0.5)]))
    assert rep.theta < 1 and rep.satisfied
    assert rep.ex >= rep.jensen_bound


def test_theta_total_loss_atom():
    rep = theta(bernoulli_pmf(0.9, 1.0))
    assert rep.theta == math.inf and not rep.satisfied
    assert rep.jensen_bound is None


@pytest.mark.parametrize(
    "lo,hi,expected", [(-0.5, 0.5, 0.75), (-1.0, 1.0, 1.0), (-0.2, 1.0, 1 / 3)]
)
def test_bernoulli_threshold(lo, hi, expected):
    assert bernoulli_threshold(lo, hi) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("lo,hi", [(-1.2, 1.0), (0.1, 1.0), (-0.5, -0.1), (-0.5, math.inf)])
def test_bernoulli_threshold_rejects(lo, hi):
    with pytest.raises(ValueError):
        bernoulli_threshold(lo, hi)


@pytest.mark.parametrize("gamma", [0.1, 0.25, 0.5, 0.8])
def test_symmetric_threshold(gamma):
    assert bernoulli_threshold(-gamma, gamma) == pytest.approx((1 + gamma) / 2, rel=1e-15)


def test_threshold_gives_theta_one():
    for lo in (-0.9, -0.5, -0.2, -0.05):
        for hi in (0.1, 0.5, 1.0, 3.0):
            p = bernoulli_threshold(lo, hi)
            if not 0 < p < 1:
                continue
            d = ReturnPmf.from_atoms([(lo, 1 - p), (hi, p)])
            assert abs(theta(d).theta - 1.0) <= 1e-12


def test_uniform_theta_values():
    assert uniform_theta(-0.5, 0.5) == pytest.approx(math.log(3), rel=1e-15)
    assert uniform_theta(-0.2, 1.0) == pytest.approx(0.763575609895129221, rel=1e-14)
    assert uniform_theta(-1e-6, 1e-6) == pytest.approx(1.0, abs=1e-10)
    assert uniform_theta(-1e-3, 1e-3) > 1.0


def test_uniform_theta_vs_discretized():
    # midpoint error is O(1/m^2)
    for m in (16, 64, 256):
        err = abs(theta(uniform_pmf(-0.5, 0.5, m)).theta - math.log(3))
        assert err <= 0.2 / m**2


def test_lambert_special_points():
    assert lambert_w_m1(-math.exp(-1)) == -1.0
    assert lambert_w_m1(-2 * math.exp(-2)) == pytest.approx(-2.0, rel=1e-14)
    w = lambert_w_m1(-0.1)
    assert w == pytest.approx(-3.577152063957297, rel=1e-14)
    assert abs(w * math.exp(w) + 0.1) <= 1e-14


@pytest.mark.parametrize("x", [0.0, 0.1, -0.5, -1.0])
def test_lambert_rejects(x):
    with pytest.raises(ValueError):
        lambert_w_m1(x)


@given(st.floats(-math.exp(-1), -1e-300))
def test_lambert_residual(x):
    w = lambert_w_m1(x)
    assert w <= -1.0
    assert abs(w * math.exp(w) - x) <= 1e-13 * abs(x)


@pytest.mark.parametrize("x", [-0.36787, -0.3, -0.2, -0.05, -1e-3, -1e-10])
def test_lambert_against_mpmath(x):
    assert lambert_w_m1(x) == pytest.approx(mp_lambert_m1(x), rel=1e-12)


def test_b_min_half():
    assert b_min(-0.5) == pytest.approx(0.756431208626169677, abs=1e-11)
    assert abs(uniform_theta(-0.5, b_min(-0.5)) - 1.0) <= 1e-9


def test_b_min_small_a():
    assert 0 < b_min(-1e-6) < 2e-6


@pytest.mark.parametrize("a", A_GRID)
def test_b_min_defining_property(a):
    b = b_min(a)
    assert abs(uniform_theta(a, b) - 1.0) <= 1e-9
    assert abs(b_min_bisection(a) - b_min_lambert(a)) <= 1e-9


@pytest.mark.parametrize("a", [0.0, -1.0, 0.3])
def test_b_min_rejects(a):
    with pytest.raises(ValueError):
        b_min(a)


def test_f_monotonicity():
    f = lambda t: np.exp(t) / (1 + t)
    left = np.linspace(-0.99, -1e-3, 500)
    right = np.linspace(1e-3, 5, 500)
    assert np.all(np.diff(f(left)) < 0)
    assert np.all(np.diff(f(right)) > 0)


@given(
    st.lists(st.floats(-0.99, 4.0), min_size=1, max_size=6, unique=True),
    st.lists(st.floats(0.01, 1.0), min_size=6, max_size=6),
)
def test_jensen_chain(xs, ws):
    d = ReturnPmf.from_atoms(zip(xs, ws[: len(xs)]), normalize=True)
    rep = theta(d)
    assert 1.0 / (1.0 + rep.ex) <= rep.theta + 1e-12
    if rep.satisfied:
        assert rep.ex >= rep.jensen_bound - 1e-12
        assert rep.ex >= -1e-12
