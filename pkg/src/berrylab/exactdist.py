"""Exact distribution function of normalised sums of ``mu_hw`` variables.

Each summand is a Bernoulli(+-x) with probability 1 - eps (eps = hw) and a
uniform on [-w/2, w/2] otherwise, so the law of the sum is a binomial
mixture over the number j of uniform summands.  For fixed j the sum is a
lattice variable on {(2l - n)x} (n = N - j) plus an independent centred
Irwin-Hall variable, and

    F_N(s) = sum_j b_j sum_l p_{n,l} U_j(sqrt(N) s - (2l - n) x)

with b_j binomial(N, eps) weights, p_{n,l} binomial(n, 1/2) weights and U_j
the CDF of the sum of j uniforms on [-w/2, w/2].  The j = 0 term is a pure
step function; every other term is continuous.

Irwin-Hall CDFs are tabulated exactly: on each unit piece [m, m+1) the CDF
is a degree-j polynomial in u = x - m whose coefficients are rationals with
denominator j!.  They are computed in integer arithmetic, rounded once, and
evaluated with Horner's rule, which gives a computable rounding bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import stats

from .errors import DomainError, StabilityError, TruncationError
from .laws import bernoulli_support

__all__ = [
    "IH_MAX_ORDER",
    "CertifiedProb",
    "BinomialMixtureWeights",
    "SumCdf",
    "irwin_hall_cdf",
    "centered_uniform_sum_cdf",
    "bernoulli_sum_pmf",
    "binomial_mixture_weights",
    "sum_cdf",
    "exact_sum_cdf",
]

IH_MAX_ORDER = 40
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class CertifiedProb:
    value: float
    err: float

    @property
    def lo(self) -> float:
        return max(0.0, self.value - self.err)

    @property
    def hi(self) -> float:
        return min(1.0, self.value + self.err)


@dataclass(frozen=True)
class BinomialMixtureWeights:
    eps: float
    N: int
    weights: tuple[float, ...]  # index j = number of uniform summands
    tail_mass: float


@lru_cache(maxsize=None)
def _ih_table(j: int):
    """Coefficients (in u = x - m) of the Irwin-Hall CDF on each piece [m, m+1).

    Returns ``(coef, absum)``: ``coef[m, d]`` multiplies ``u**d`` and
    ``absum[m] = sum_d |coef[m, d]|`` bounds the Horner rounding error.
    """
    fact = math.factorial(j)
    binom = [math.comb(j, i) for i in range(j + 1)]
    coef = np.empty((j, j + 1))
    for m in range(j):
        for d in range(j + 1):
            # j! * c_d = C(j, d) * sum_{i <= m} (-1)^i C(j, i) (m - i)^(j - d)
            acc = sum((-1) ** i * binom[i] * (m - i) ** (j - d) for i in range(m + 1))
            coef[m, d] = (binom[d] * acc) / fact  # int / int: correctly rounded
    coef.setflags(write=False)
    absum = np.abs(coef).sum(axis=1)
    absum.setflags(write=False)
    return coef, absum


def _check_order(j: int) -> None:
    if j < 0:
        raise ValueError(f"Irwin-Hall order must be >= 0, got {j}")
    if j > IH_MAX_ORDER:
        raise StabilityError(f"Irwin-Hall order {j} exceeds the cap {IH_MAX_ORDER}")


def _ih_eval(j: int, y: np.ndarray):
    """Irwin-Hall CDF values and per-point rounding bounds for j >= 1."""
    coef, absum = _ih_table(j)
    y = np.asarray(y, dtype=float)
    out = np.where(y >= j, 1.0, 0.0)
    err = np.zeros_like(out)
    inside = (y > 0.0) & (y < j)
    if np.any(inside):
        yi = y[inside]
        m = np.minimum(np.floor(yi).astype(np.int64), j - 1)
        u = yi - m
        c = coef[m]
        acc = c[:, j].copy()
        for d in range(j - 1, -1, -1):
            acc = acc * u + c[:, d]
        out[inside] = np.clip(acc, 0.0, 1.0)
        err[inside] = (2 * j + 2) * _EPS * absum[m]
    return out, err


def irwin_hall_cdf(j: int, x):
    """CDF at x of the sum of j independent uniform[0, 1] variables.

    ``j = 0`` is the unit step at 0 (right-continuous).

    Raises
    ------
    StabilityError
        If ``j > 40``.
    """
    _check_order(j)
    x_arr = np.asarray(x, dtype=float)
    if j == 0:
        out = np.where(x_arr >= 0.0, 1.0, 0.0)
    else:
        out, _ = _ih_eval(j, x_arr)
    return float(out) if out.ndim == 0 else out


def centered_uniform_sum_cdf(j: int, w: float, s):
    """CDF of the sum of j independent uniforms on [-w/2, w/2]."""
    _check_order(j)
    s_arr = np.asarray(s, dtype=float)
    if j == 0:
        out = np.where(s_arr >= 0.0, 1.0, 0.0)
    else:
        out, _ = _ih_eval(j, s_arr / w + 0.5 * j)
    return float(out) if out.ndim == 0 else out


def bernoulli_sum_pmf(n: int, x: float):
    """Support and masses of Z_1 + ... + Z_n with Z_i = +-x equally likely.

    Returns ``(locations, probs)``, locations ``(2l - n) x`` ascending in l.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    ell = np.arange(n + 1)
    return (2 * ell - n) * x, stats.binom.pmf(ell, n, 0.5)


def binomial_mixture_weights(N: int, eps: float, tol: float) -> BinomialMixtureWeights:
    """Binomial(N, eps) weights up to the smallest cut J whose tail is <= tol/2.

    Raises
    ------
    TruncationError
        If even ``J = min(40, N)`` leaves a tail heavier than tol/2.
    """
    cap = min(IH_MAX_ORDER, N)
    if eps == 0.0:
        return BinomialMixtureWeights(eps=0.0, N=N, weights=(1.0,), tail_mass=0.0)
    sf = stats.binom.sf(np.arange(cap + 1), N, eps)
    if cap == N:
        sf[-1] = 0.0
    ok = np.nonzero(sf <= 0.5 * tol)[0]
    if ok.size == 0:
        raise TruncationError(
            f"binomial tail beyond j={cap} is {sf[-1]:.3g} > tol/2 = {0.5 * tol:.3g} "
            f"(N={N}, eps={eps:.4g}); use Monte Carlo instead"
        )
    J = int(ok[0])
    weights = stats.binom.pmf(np.arange(J + 1), N, eps)
    return BinomialMixtureWeights(eps=eps, N=N, weights=tuple(float(v) for v in weights), tail_mass=float(sf[J]))


@dataclass(frozen=True)
class _Component:
    j: int
    weight: float
    locs: np.ndarray  # lattice support, ascending
    cum: np.ndarray  # cum[i] = P(lattice index < i), length n + 2


@dataclass(frozen=True)
class SumCdf:
    """Evaluator for P(S_N <= s), S_N the normalised sum of N draws of mu_hw.

    ``h = 0`` is accepted and gives the pure Bernoulli(+-1) sum.
    """

    h: float
    w: float
    N: int
    tol: float = 1e-10
    x: float = field(init=False)
    mixture: BinomialMixtureWeights = field(init=False, repr=False)
    _components: tuple = field(init=False, repr=False)

    def __post_init__(self):
        if not (0.0 <= self.h <= 1.0 and 0.0 < self.w <= 1.0) or self.h * self.w >= 1.0:
            raise DomainError(f"need 0 <= h <= 1, 0 < w <= 1, hw < 1; got h={self.h}, w={self.w}")
        if self.N < 1:
            raise DomainError(f"N must be >= 1, got {self.N}")
        if self.tol < 1e-12:
            raise DomainError(f"tol must be >= 1e-12, got {self.tol}")
        x = bernoulli_support(self.h, self.w)
        mix = binomial_mixture_weights(self.N, self.h * self.w, self.tol)
        comps = []
        for j, b in enumerate(mix.weights):
            locs, pmf = bernoulli_sum_pmf(self.N - j, x)
            cum = np.concatenate(([0.0], np.cumsum(pmf)))
            cum[-1] = 1.0
            comps.append(_Component(j=j, weight=b, locs=locs, cum=cum))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "mixture", mix)
        object.__setattr__(self, "_components", tuple(comps))

    @property
    def J_cap(self) -> int:
        return len(self.mixture.weights) - 1

    @property
    def scale(self) -> float:
        return math.sqrt(self.N)

    def jump_points(self):
        """Locations and sizes of the jumps of F_N (all from the j = 0 term)."""
        c = self._components[0]
        return c.locs / self.scale, c.weight * np.diff(c.cum)

    def support(self) -> tuple[float, float]:
        r = self.N * self.x / self.scale
        return -r, r

    def _continuous(self, s: np.ndarray):
        """Sum over j >= 1 of b_j G_j(s), with a rounding bound per point."""
        z = self.scale * s
        val = np.zeros_like(z)
        err = np.zeros_like(z)
        x, w = self.x, self.w
        for c in self._components[1:]:
            j, n = c.j, self.N - c.j
            half = 0.5 * j * w
            # first lattice index whose uniform part is not already saturated,
            # started one early so rounding never drops a partial term
            first = np.floor(((z - half) / x + n) / 2.0).astype(np.int64)
            first = np.clip(first, 0, n + 1)
            width = int(math.floor(j * w / (2.0 * x))) + 3
            idx = first[:, None] + np.arange(width)[None, :]
            valid = idx <= n
            idx_c = np.minimum(idx, n)
            y = (z[:, None] - c.locs[idx_c]) / w + 0.5 * j
            ih, ih_err = _ih_eval(j, y)
            p = c.cum[idx_c + 1] - c.cum[idx_c]
            p = np.where(valid, p, 0.0)
            g = c.cum[first] + (p * ih).sum(axis=1)
            val += c.weight * g
            err += c.weight * ((p * ih_err).sum(axis=1) + (width + 2) * 4 * _EPS)
        return val, err

    def _lattice(self, s: np.ndarray):
        c = self._components[0]
        # locs/scale is monotone; count support points <= s
        k = np.searchsorted(c.locs / self.scale, s, side="right")
        return c.weight * c.cum[k]

    def _budget(self, s: np.ndarray):
        """Floating-point budget beyond the Horner bounds.

        Covers rounding of the lattice offsets and of sqrt(N) s (arguments
        carry a relative error of a few ulps, and every uniform-sum density is
        at most 1/w) plus a flat 1e-12 per 1e6 accumulated terms.
        """
        terms = sum(len(c.locs) for c in self._components)
        arg = self.scale * np.abs(s) + self.N * self.x + self.J_cap
        return 1e-12 * max(1.0, terms / 1e6) + 16 * _EPS * arg / self.w

    def evaluate(self, s):
        """Value and certified error radius of F_N at s (scalar or array)."""
        s_arr = np.atleast_1d(np.asarray(s, dtype=float))
        cont, err = self._continuous(s_arr)
        val = np.clip(cont + self._lattice(s_arr), 0.0, 1.0)
        err = err + self._budget(s_arr) + self.mixture.tail_mass
        if np.ndim(s) == 0:
            return float(val[0]), float(err[0])
        return val, err

    def continuous_part(self, s):
        """Sum of the j >= 1 terms only (continuous in s), with error radii."""
        s_arr = np.atleast_1d(np.asarray(s, dtype=float))
        val, err = self._continuous(s_arr)
        return val, err + self._budget(s_arr) + self.mixture.tail_mass

    def __call__(self, s) -> CertifiedProb:
        v, e = self.evaluate(float(s))
        return CertifiedProb(value=v, err=e)


@lru_cache(maxsize=64)
def sum_cdf(h: float, w: float, N: int, tol: float = 1e-10) -> SumCdf:
    """Cached :class:`SumCdf` constructor."""
    return SumCdf(h=h, w=w, N=N, tol=tol)


def exact_sum_cdf(h: float, w: float, N: int, s: float, tol: float = 1e-10) -> CertifiedProb:
    """P(N^{-1/2}(X_1 + ... + X_N) <= s) for X_i ~ mu_hw, with certified error.

    Raises
    ------
    TruncationError
        If the binomial tail beyond j = 40 exceeds tol/2.
    """
    return sum_cdf(float(h), float(w), int(N), float(tol))(s)
