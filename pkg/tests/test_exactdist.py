import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from berrylab.errors import DomainError, StabilityError, TruncationError
from berrylab.exactdist import (
    _ih_eval,
    bernoulli_sum_pmf,
    binomial_mixture_weights,
    centered_uniform_sum_cdf,
    exact_sum_cdf,
    irwin_hall_cdf,
    sum_cdf,
)
from oracles import grid_oracle, irwin_hall_fraction, irwin_hall_mp


def test_irwin_hall_examples():
    assert irwin_hall_cdf(1, 0.3) == pytest.approx(0.3, abs=1e-16)
    assert irwin_hall_cdf(2, 1.0) == pytest.approx(0.5, abs=1e-16)
    assert irwin_hall_cdf(2, 0.5) == pytest.approx(0.125, abs=1e-16)


def test_irwin_hall_order_zero():
    assert irwin_hall_cdf(0, 0.0) == 1.0
    assert irwin_hall_cdf(0, -1e-300) == 0.0


def test_irwin_hall_cap():
    with pytest.raises(StabilityError):
        irwin_hall_cdf(41, 3.0)
    with pytest.raises(ValueError):
        irwin_hall_cdf(-1, 3.0)


@pytest.mark.parametrize("j", range(1, 13))
def test_irwin_hall_exact_rationals(j):
    xs = np.array([i / 7 for i in range(-3, 7 * j + 4)])
    ours = irwin_hall_cdf(j, xs)
    _, bound = _ih_eval(j, xs)
    for x, v, b in zip(xs, ours, bound):
        exact = irwin_hall_fraction(j, Fraction(float(x)))
        assert abs(Fraction(float(v)) - exact) <= Fraction(b) + Fraction(1, 2**53)
        assert abs(v - float(exact)) <= 4.5e-16


@pytest.mark.parametrize("j", [13, 20, 27, 33, 40])
def test_irwin_hall_high_precision(j):
    rng = np.random.default_rng(j)
    xs = np.concatenate((rng.uniform(0, j, 25), [0.5, j / 2, j - 0.5]))
    ours = irwin_hall_cdf(j, xs)
    for x, v in zip(xs, ours):
        assert abs(v - irwin_hall_mp(j, x)) <= 1e-13


@pytest.mark.parametrize("j", range(1, 11))
def test_irwin_hall_moments(j):
    surv = lambda x: 1.0 - irwin_hall_cdf(j, x)
    pts = list(range(1, j))
    mean, _ = integrate.quad(surv, 0, j, points=pts or None, epsabs=1e-13, limit=200)
    second, _ = integrate.quad(lambda x: 2 * x * surv(x), 0, j, points=pts or None, epsabs=1e-13, limit=200)
    assert mean == pytest.approx(j / 2, abs=1e-9)
    assert second - mean**2 == pytest.approx(j / 12, abs=1e-9)


@given(st.integers(1, 40), st.floats(0, 1))
def test_irwin_hall_symmetry(j, u):
    x = u * j
    assert irwin_hall_cdf(j, x) + irwin_hall_cdf(j, j - x) == pytest.approx(1.0, abs=1e-13)


@pytest.mark.parametrize("j", [1, 2, 5, 17, 40])
def test_centered_uniform_sum(j):
    assert centered_uniform_sum_cdf(j, 0.3, 0.0) == pytest.approx(0.5, abs=1e-14)
    assert centered_uniform_sum_cdf(j, 0.3, 0.15 * j) == 1.0


def test_centered_uniform_sum_edge_cases():
    assert centered_uniform_sum_cdf(0, 0.5, 0.0) == 1.0
    assert centered_uniform_sum_cdf(0, 0.5, 0.3) == 1.0
    assert centered_uniform_sum_cdf(0, 0.5, -0.3) == 0.0
    assert centered_uniform_sum_cdf(3, 1.0, 1.5) == 1.0


def test_bernoulli_sum_pmf_small():
    x = 1.3
    locs, p = bernoulli_sum_pmf(2, x)
    assert list(locs) == pytest.approx([-2 * x, 0, 2 * x])
    assert list(p) == pytest.approx([0.25, 0.5, 0.25])
    locs, p = bernoulli_sum_pmf(4, x)
    assert p[2] == pytest.approx(0.375, abs=1e-15)


@pytest.mark.parametrize("n", range(2, 65, 2))
def test_bernoulli_central_atom(n):
    _, p = bernoulli_sum_pmf(n, 1.0)
    exact = Fraction(math.comb(n, n // 2), 2**n)
    assert p[n // 2] == pytest.approx(float(exact), rel=1e-13)
    assert p[n // 2] >= 1.5 / math.sqrt(2 * math.pi * n)


@pytest.mark.parametrize("N,eps,tol", [(4, 0.25, 1e-10), (32, 0.5, 1e-10), (100, 0.04, 1e-12), (1, 0.9, 1e-6)])
def test_mixture_weights_bookkeeping(N, eps, tol):
    mix = binomial_mixture_weights(N, eps, tol)
    assert math.fsum(mix.weights) + mix.tail_mass == pytest.approx(1.0, abs=1e-14)
    assert mix.tail_mass <= tol / 2
    J = len(mix.weights) - 1
    if J > 0:
        # J is the smallest admissible cut
        below = math.fsum(math.comb(N, j) * eps**j * (1 - eps) ** (N - j) for j in range(J, N + 1))
        assert below > tol / 2


def test_truncation_error():
    with pytest.raises(TruncationError):
        sum_cdf(0.9, 1.0, 1000, 1e-10)


def test_sum_cdf_domain():
    with pytest.raises(DomainError):
        sum_cdf(1.0, 1.0, 4)
    with pytest.raises(DomainError):
        sum_cdf(0.5, 0.5, 0)
    with pytest.raises(DomainError):
        sum_cdf(0.5, 0.5, 4, 1e-13)


def test_limits():
    for N in (1, 5, 32):
        r = exact_sum_cdf(0.5, 0.5, N, 1e3)
        assert abs(r.value - 1) <= r.err + 1e-10
        r = exact_sum_cdf(0.5, 0.5, N, -1e3)
        assert abs(r.value) <= r.err + 1e-10


@pytest.mark.parametrize("h,w,N", [(0.5, 0.5, 4), (0.2, 0.2, 16), (1.0, 0.5, 7), (0.5, 0.5, 32)])
def test_symmetry(h, w, N):
    sc = sum_cdf(h, w, N)
    rng = np.random.default_rng(N)
    s = rng.uniform(-3, 3, 100)
    a, ea = sc.evaluate(s)
    b, eb = sc.evaluate(-s)
    # random s avoids the lattice, so F(-s-) = F(-s)
    assert np.all(np.abs(a + b - 1) <= ea + eb)


def test_symmetry_at_lattice_point():
    sc = sum_cdf(0.5, 0.5, 4)
    jumps, sizes = sc.jump_points()
    mid = jumps.size // 2
    assert jumps[mid] == 0.0
    v, e = sc.evaluate(0.0)
    left = v - sizes[mid]
    assert left + v == pytest.approx(1.0, abs=2 * e)


@pytest.mark.parametrize("h,w,N", [(0.5, 0.5, 8), (0.2, 0.5, 40), (1.0, 0.5, 16)])
def test_monotone(h, w, N):
    sc = sum_cdf(h, w, N)
    s = np.linspace(-4, 4, 20001)
    v, e = sc.evaluate(s)
    assert np.all(np.diff(v) >= -(e[1:] + e[:-1]))


def test_err_is_small():
    v, e = sum_cdf(0.5, 0.5, 32, 1e-10).evaluate(np.linspace(-3, 3, 101))
    assert np.all(e < 1e-9)


def test_pure_bernoulli_h_zero():
    sc = sum_cdf(0.0, 0.5, 1)
    assert sc(-1.0).value == pytest.approx(0.5)
    assert sc(np.nextafter(-1.0, -2)).value == 0.0
    assert sc(0.99).value == pytest.approx(0.5)
    assert sc(1.0).value == 1.0


def test_call_returns_certified_prob():
    r = exact_sum_cdf(0.2, 0.2, 4, 0.5)
    assert 0 <= r.lo <= r.value <= r.hi <= 1
    assert r.err > 0


def test_oracle_spot_value():
    o = grid_oracle(0.2, 0.2, 4)(0.5)[0]
    r = exact_sum_cdf(0.2, 0.2, 4, 0.5)
    assert abs(o - r.value) <= 1e-8 + r.err


@settings(max_examples=30, deadline=None)
@given(
    st.sampled_from([(0.2, 0.2), (0.2, 0.5), (0.5, 0.2), (0.5, 0.5)]),
    st.integers(1, 8),
    st.floats(-3.5, 3.5),
)
def test_grid_oracle_property(hw, N, s):
    h, w = hw
    o = grid_oracle(h, w, N)(s)[0]
    v, e = sum_cdf(h, w, N, 1e-12).evaluate(s)
    # the oracle's right-continuous step at lattice points matches ours exactly
    assert abs(o - v) <= 1e-8 + e
