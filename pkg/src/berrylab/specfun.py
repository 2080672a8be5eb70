"""Special functions used by the bounds: normal CDF, Gaussian absolute
moments, log-gamma and the Stirling bracket for factorials.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

__all__ = [
    "SQRT_2PI",
    "PHI_ABS_ERR",
    "std_normal_cdf",
    "std_normal_pdf",
    "log_gamma",
    "gaussian_abs_moment",
    "gaussian_moment",
    "StirlingBracket",
    "stirling_bracket",
]

SQRT_2PI = math.sqrt(2.0 * math.pi)

# Absolute error budget charged for every evaluation of the normal CDF when
# certifying KS distances.
PHI_ABS_ERR = 1e-14


def std_normal_cdf(s):
    """Standard normal distribution function.

    Accepts a scalar or an array. Evaluated through the complementary error
    function, ``Phi(s) = erfc(-s / sqrt(2)) / 2``, which keeps full relative
    accuracy in the lower tail and is monotone in ``s``.
    """
    if np.ndim(s) == 0:
        return 0.5 * math.erfc(-float(s) / math.sqrt(2.0))
    return special.ndtr(np.asarray(s, dtype=float))


def std_normal_pdf(s):
    if np.ndim(s) == 0:
        return math.exp(-0.5 * float(s) ** 2) / SQRT_2PI
    s = np.asarray(s, dtype=float)
    return np.exp(-0.5 * s * s) / SQRT_2PI


def log_gamma(x: float) -> float:
    return math.lgamma(x)


def gaussian_abs_moment(j: int) -> float:
    """E|G|^j for a standard Gaussian G.

    Closed form ``2**(j/2) * Gamma((j+1)/2) / sqrt(pi)``; for j = 2 this is 1
    and for j = 4 it is 3.
    """
    if j < 0:
        raise ValueError(f"moment order must be non-negative, got {j}")
    return math.exp(0.5 * j * math.log(2.0) + math.lgamma(0.5 * (j + 1))) / math.sqrt(math.pi)


def gaussian_moment(j: int) -> float:
    """E[G^j]: zero for odd j, (j-1)!! for even j."""
    if j < 0:
        raise ValueError(f"moment order must be non-negative, got {j}")
    if j % 2:
        return 0.0
    out = 1
    for i in range(j - 1, 0, -2):
        out *= i
    return float(out)


@dataclass(frozen=True)
class StirlingBracket:
    k: int
    lower: float
    upper: float

    def contains(self, value) -> bool:
        return self.lower <= value <= self.upper


def stirling_bracket(k: int) -> StirlingBracket:
    """``sqrt(2 pi k) (k/e)^k <= k! <= 1.1 sqrt(2 pi k) (k/e)^k`` for k >= 1."""
    if k < 1:
        raise ValueError(f"Stirling bracket needs k >= 1, got {k}")
    lower = math.exp(0.5 * math.log(2.0 * math.pi * k) + k * (math.log(k) - 1.0))
    return StirlingBracket(k=k, lower=lower, upper=1.1 * lower)
