import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from berrylab.charfun import (
    SINC_SERIES_CUTOFF,
    cf_eval,
    cf_minus_one,
    cf_pow_rescaled,
    envelope_constants,
    gauss_gap,
    global_decay_bound,
    lemma_local1_envelope,
    local_envelope,
    log_cf,
    sinc,
)
from berrylab.errors import DomainError
from berrylab.laws import abs_moment, bernoulli_support, make_mixed_law, mu_hw
import suites

BERNOULLI = make_mixed_law([(-1, 0.5), (1, 0.5)], [])


def uniform(w):
    return make_mixed_law([], [(-w / 2, w / 2, 1 / w)])


def test_bernoulli_cf():
    t = np.linspace(-30, 30, 301)
    assert np.allclose(cf_eval(BERNOULLI, t), np.cos(t), atol=1e-15, rtol=0)


def test_uniform_cf():
    w = 0.7
    t = np.linspace(-30, 30, 300)
    assert np.allclose(cf_eval(uniform(w), t), np.sin(w * t / 2) / (w * t / 2), atol=1e-15, rtol=0)


def test_mu_hw_cf_closed_form():
    h, w = 0.5, 0.5
    x = bernoulli_support(h, w)
    t = np.linspace(-20, 20, 401)
    closed = (1 - h * w) * np.cos(x * t) + h * w * sinc(w * t / 2)
    assert np.allclose(cf_eval(mu_hw(h, w), t), closed, atol=1e-15, rtol=0)


@pytest.mark.parametrize("t", [0.3, 2.0, 7.5])
def test_mu_hw_cf_quadrature(t):
    h, w = 0.4, 0.6
    x = bernoulli_support(h, w)
    re, _ = integrate.quad(lambda s: math.cos(t * s) * h, -w / 2, w / 2, epsabs=1e-15)
    z = cf_eval(mu_hw(h, w), t)
    assert z.real == pytest.approx((1 - h * w) * math.cos(x * t) + re, abs=1e-14)
    assert abs(z.imag) <= 1e-15


def test_asymmetric_cf_has_imaginary_part():
    law = make_mixed_law([(0.0, 0.5)], [(0.0, 1.0, 0.5)])
    t = 1.3
    expect = 0.5 + 0.5 * (np.exp(1j * t) - 1) / (1j * t)
    assert abs(cf_eval(law, t) - expect) <= 1e-15


def test_sinc_switchover_continuity():
    z = SINC_SERIES_CUTOFF
    series = sinc(np.nextafter(z, 0))
    closed = math.sin(z) / z
    assert abs(series - closed) <= 1e-15
    assert sinc(0.0) == 1.0


def test_cf_minus_one_small_t():
    law = mu_hw(0.5, 0.5)
    t = 1e-6
    # phi(t) - 1 = -t^2/2 + t^4 E X^4 / 24 - ...
    assert cf_minus_one(law, t).real == pytest.approx(-0.5 * t * t, rel=1e-10)
    assert cf_minus_one(law, 0.0) == 0


def test_cf_minus_one_agrees_with_direct():
    law = mu_hw(0.3, 0.9)
    t = np.linspace(0.5, 40, 200)
    assert np.allclose(cf_minus_one(law, t), cf_eval(law, t) - 1, atol=1e-14, rtol=0)


def test_pow_at_zero():
    assert cf_pow_rescaled(mu_hw(0.5, 0.5), 0.0, 7) == 1


def test_pow_bernoulli_n2():
    t = np.linspace(-10, 10, 201)
    assert np.allclose(cf_pow_rescaled(BERNOULLI, t, 2), np.cos(t / math.sqrt(2)) ** 2, atol=1e-14, rtol=0)


def test_pow_modulus_random():
    rng = np.random.default_rng(11)
    law = mu_hw(0.5, 0.5)
    t = rng.uniform(-200, 200, 10_000)
    N = rng.integers(1, 200, t.size)
    mags = np.array([abs(cf_pow_rescaled(law, a, int(n))) for a, n in zip(t[:2000], N[:2000])])
    assert np.all(mags <= 1 + 1e-12)
    for n in np.unique(N):
        sel = N == n
        assert np.all(np.abs(cf_pow_rescaled(law, t[sel], int(n))) <= 1 + 1e-12)


@pytest.mark.parametrize("N", [1, 2, 3, 8, 33, 64])
def test_pow_matches_iterated_product(N):
    law = mu_hw(0.25, 1.0)
    t = np.linspace(-15, 15, 301)
    phi = cf_eval(law, t / math.sqrt(N))
    prod = np.ones_like(phi)
    for _ in range(N):
        prod = prod * phi
    assert np.allclose(cf_pow_rescaled(law, t, N), prod, atol=1e-13, rtol=0)


def test_pow_tiny_modulus_branch():
    # Bernoulli CF vanishes at pi/2; |phi| < 1e-8 triggers repeated squaring
    t = math.pi / 2 * math.sqrt(3) + 1e-10
    z = cf_pow_rescaled(BERNOULLI, t, 3)
    assert abs(z - math.cos(t / math.sqrt(3)) ** 3) <= 1e-20


def test_log_cf_principal():
    law = mu_hw(0.5, 0.5)
    t = np.linspace(-3, 3, 61)
    assert np.allclose(np.exp(log_cf(law, t)), cf_eval(law, t), atol=1e-15, rtol=0)


def test_gauss_gap_near_zero_is_relative_accurate():
    law = mu_hw(0.5, 0.5)
    t = 1e-3
    # leading term t^4 (E X^4 - 3) / 24
    lead = t**4 * abs(abs_moment(law, 4) - 3) / 24
    assert gauss_gap(law, t, 1) == pytest.approx(lead, rel=1e-4)


def test_envelope_constants_examples():
    c = envelope_constants(3, 1.0)
    assert (c.c1, c.c2, c.c0) == pytest.approx((0.5, 32.0, 0.5))
    c = envelope_constants(3, 2.0)
    assert (c.c1, c.c2, c.c0) == pytest.approx((0.5, 8.0, 0.5))
    c = envelope_constants(3, 8.0)
    assert (c.c1, c.c0) == pytest.approx((0.125, 0.125))


@given(st.integers(2, 12), st.floats(1.0, 50.0))
def test_envelope_constants_invariants(k, m):
    c = envelope_constants(k, m)
    assert c.c0 == min(c.c1, c.c2)
    assert 0 < c.c0 <= 0.5
    assert c.c1 == min(0.5, (k + 1) / (4 * m))


def test_envelope_constants_domain():
    with pytest.raises(DomainError):
        envelope_constants(3, 0.9)
    with pytest.raises(DomainError):
        envelope_constants(1, 2.0)


def test_local_envelope_examples():
    assert local_envelope(3, 1.0, 0.0, 5) == 0.0
    assert local_envelope(3, 1.0, 1.0, 1) == pytest.approx(4 * math.exp(-0.25) / 24, rel=1e-15)
    assert local_envelope(3, 1.0, 1.0, 1) == pytest.approx(0.12980, abs=1e-5)


@given(st.integers(2, 8), st.floats(0.01, 10), st.integers(1, 1000))
def test_local_envelope_doubling(k, t, N):
    a = local_envelope(k, 1.3, t, N)
    b = local_envelope(k, 1.3, t, 2 * N)
    assert b == pytest.approx(a * 2 ** (-(k - 1) / 2), rel=1e-12)


def test_lemma_local1_examples():
    assert lemma_local1_envelope(3, 1.0, 0.0) == 0.0
    assert lemma_local1_envelope(3, 1.0, 2.0) == pytest.approx(2.0, rel=1e-15)


@given(st.integers(2, 8), st.floats(0.01, 10), st.floats(0.1, 10))
def test_lemma_local1_homogeneous(k, t, lam):
    a = lemma_local1_envelope(k, 1.7, t)
    assert lemma_local1_envelope(k, 1.7, lam * t) == pytest.approx(lam ** (k + 1) * a, rel=1e-12)


def test_global_decay_examples():
    assert global_decay_bound(1, 1, 4) == pytest.approx(math.exp(-0.5), rel=1e-15)
    assert global_decay_bound(1, 1, 4) == pytest.approx(0.60653, abs=1e-5)
    assert global_decay_bound(0.5, 0.5, 1e-9) == pytest.approx(1.0, abs=1e-15)
    assert global_decay_bound(0.5, 0.5, 8.0) > 0


@pytest.mark.parametrize("t0", [0.0, -1.0, 4.0 / 0.5 + 1e-9])
def test_global_decay_domain(t0):
    with pytest.raises(DomainError):
        global_decay_bound(0.5, 0.5, t0)


def test_suite_local1():
    assert suites.local1_violations() == 0


def test_suite_local1_all_cells():
    assert suites.local1_violations(suites.SUITE_HW) == 0


def test_suite_creat():
    assert suites.creat_violations() == 0


def test_suite_log():
    assert suites.log_violations() == 0


def test_suite_charcont():
    assert suites.charcont_violations() == 0
