"""Characteristic functions of mixed laws and the local/global envelopes that
control them.

Everything is vectorised over ``t``. Differences against the Gaussian CF are
computed without cancellation (``phi - 1`` is assembled from ``-2 sin^2`` and
``sinc - 1`` terms, logarithms go through ``log1p``), so the envelope checks
remain meaningful for ``|t|`` close to zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .laws import MixedLaw

__all__ = [
    "sinc",
    "cf_eval",
    "cf_minus_one",
    "log_cf",
    "cf_pow_rescaled",
    "gauss_gap",
    "log_gap",
    "EnvelopeConstants",
    "envelope_constants",
    "local_envelope",
    "log_envelope",
    "lemma_local1_envelope",
    "global_decay_bound",
]

SINC_SERIES_CUTOFF = 1e-4
# below this modulus the principal log is avoided in cf_pow_rescaled
TINY_MODULUS = 1e-8


def sinc(z):
    """sin(z)/z, with a Taylor polynomial for ``|z| < 1e-4``."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    small = np.abs(z) < SINC_SERIES_CUTOFF
    zs = z[small] ** 2
    out[small] = 1.0 - zs / 6.0 * (1.0 - zs / 20.0 * (1.0 - zs / 42.0 * (1.0 - zs / 72.0)))
    zl = z[~small]
    out[~small] = np.sin(zl) / zl
    return out[()] if out.ndim == 0 else out


def _sinc_minus_one(z):
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    small = np.abs(z) < 0.5
    zs = z[small] ** 2
    # Horner form of sum_{n>=1} (-1)^n z^(2n) / (2n+1)!, truncated after z^16
    acc = np.zeros_like(zs)
    for n in range(8, 0, -1):
        acc = (-1.0) ** n / math.factorial(2 * n + 1) + zs * acc
    out[small] = zs * acc
    zl = z[~small]
    out[~small] = np.sin(zl) / zl - 1.0
    return out


def _law_arrays(law: MixedLaw):
    loc = np.array([a.location for a in law.atoms], dtype=float)
    pa = np.array([a.mass for a in law.atoms], dtype=float)
    mid = np.array([0.5 * (p.lo + p.hi) for p in law.steps], dtype=float)
    half = np.array([0.5 * (p.hi - p.lo) for p in law.steps], dtype=float)
    ps = np.array([p.mass for p in law.steps], dtype=float)
    return loc, pa, mid, half, ps


def cf_eval(law: MixedLaw, t):
    """E[exp(itX)]: atoms give ``p e^{ita}``, a box on [lo, hi] gives
    ``mass * e^{it(lo+hi)/2} * sinc(t(hi-lo)/2)``."""
    t_arr = np.asarray(t, dtype=float)
    tt = t_arr[..., None]
    loc, pa, mid, half, ps = _law_arrays(law)
    val = np.zeros(t_arr.shape, dtype=complex)
    if loc.size:
        val = val + (pa * np.exp(1j * tt * loc)).sum(axis=-1)
    if mid.size:
        val = val + (ps * np.exp(1j * tt * mid) * sinc(tt * half)).sum(axis=-1)
    return complex(val) if val.ndim == 0 else val


def cf_minus_one(law: MixedLaw, t):
    """phi(t) - 1 computed without cancellation near t = 0."""
    t_arr = np.asarray(t, dtype=float)
    tt = t_arr[..., None]
    loc, pa, mid, half, ps = _law_arrays(law)
    re = np.zeros(t_arr.shape)
    im = np.zeros(t_arr.shape)
    if loc.size:
        arg = tt * loc
        re = re + (pa * (-2.0 * np.sin(0.5 * arg) ** 2)).sum(axis=-1)
        im = im + (pa * np.sin(arg)).sum(axis=-1)
    if mid.size:
        arg = tt * mid
        s = sinc(tt * half)
        sm1 = _sinc_minus_one(tt * half)
        # e^{ia} s - 1 = (e^{ia} - 1) s + (s - 1)
        re = re + (ps * (-2.0 * np.sin(0.5 * arg) ** 2 * s + sm1)).sum(axis=-1)
        im = im + (ps * np.sin(arg) * s).sum(axis=-1)
    val = re + 1j * im
    return complex(val) if val.ndim == 0 else val


def _log1p_complex(d):
    re, im = d.real, d.imag
    return 0.5 * np.log1p(2.0 * re + re * re + im * im) + 1j * np.arctan2(im, 1.0 + re)


def log_cf(law: MixedLaw, t):
    """Principal logarithm of phi(t)."""
    d = np.asarray(cf_minus_one(law, t))
    with np.errstate(divide="ignore"):
        val = _log1p_complex(d)
    return complex(val) if val.ndim == 0 else val


def _int_power(z, N: int):
    out = np.ones_like(z)
    base = z.copy()
    while N:
        if N & 1:
            out = out * base
        base = base * base
        N >>= 1
    return out


def cf_pow_rescaled(law: MixedLaw, t, N: int):
    """phi(t / sqrt(N))**N, the CF of the normalised sum of N copies.

    Uses ``exp(N Log phi)``, which is exact for integer N; where ``|phi|``
    drops below 1e-8 the power is taken by repeated squaring instead.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    u = np.asarray(t, dtype=float) / math.sqrt(N)
    phi = np.asarray(cf_eval(law, u), dtype=complex)
    tiny = np.abs(phi) < TINY_MODULUS
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.exp(N * np.asarray(log_cf(law, u)))
    if np.any(tiny):
        out = np.where(tiny, _int_power(phi, N), out)
    return complex(out) if out.ndim == 0 else out


def _expm1_complex(z):
    a, b = z.real, z.imag
    return (np.expm1(a) * np.cos(b) - 2.0 * np.sin(0.5 * b) ** 2) + 1j * (np.exp(a) * np.sin(b))


def gauss_gap(law: MixedLaw, t, N: int = 1):
    """|phi(t/sqrt(N))**N - exp(-t^2/2)|, accurate for small |t|."""
    t = np.asarray(t, dtype=float)
    u = t / math.sqrt(N)
    phi = np.asarray(cf_eval(law, u), dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        z = N * np.asarray(log_cf(law, u)) + 0.5 * t * t
        near = np.abs(np.exp(-0.5 * t * t) * _expm1_complex(z))
    direct = np.abs(_int_power(phi, N) - np.exp(-0.5 * t * t))
    use_direct = (np.abs(phi) < TINY_MODULUS) | (z.real > 50.0) | ~np.isfinite(near)
    out = np.where(use_direct, direct, near)
    return float(out) if out.ndim == 0 else out


def log_gap(law: MixedLaw, t, N: int = 1):
    """|N Log phi(t/sqrt(N)) + t^2/2|."""
    t = np.asarray(t, dtype=float)
    out = np.abs(N * np.asarray(log_cf(law, t / math.sqrt(N))) + 0.5 * t * t)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class EnvelopeConstants:
    c0: float
    c1: float
    c2: float
    k: int
    m_k1: float

    def local_range(self, N: int) -> float:
        """Half-width c0*sqrt(N) of the t-range covered by the local envelope."""
        return self.c0 * math.sqrt(N)


def envelope_constants(k: int, m_k1: float) -> EnvelopeConstants:
    """c1 = 1/2 ^ (k+1)/(4m), c2 = 2((k+1)/m)^((k+1)/(k-1)), c0 = c1 ^ c2."""
    if k < 2:
        raise DomainError(f"envelope constants need k >= 2, got {k}")
    if not m_k1 >= 1.0:
        raise DomainError(f"m_(k+1) must be >= 1 for a unit-variance law, got {m_k1}")
    r = (k + 1) / m_k1
    c1 = min(0.5, r / 4.0)
    c2 = 2.0 * r ** ((k + 1) / (k - 1))
    return EnvelopeConstants(c0=min(c1, c2), c1=c1, c2=c2, k=k, m_k1=m_k1)


def local_envelope(k: int, abs_moment_k1: float, t, N: int):
    """4 N^{-(k-1)/2} |t|^{k+1} E|X|^{k+1} e^{-t^2/4} / (k+1)!.

    Bounds |phi(t/sqrt N)^N - e^{-t^2/2}| for |t| <= c0 sqrt(N); the formula
    is evaluated regardless of range, see ``EnvelopeConstants.local_range``.
    """
    t = np.asarray(t, dtype=float)
    out = (
        4.0 * N ** (-(k - 1) / 2.0) * np.abs(t) ** (k + 1) * abs_moment_k1
        * np.exp(-0.25 * t * t) / math.factorial(k + 1)
    )
    return float(out) if out.ndim == 0 else out


def log_envelope(k: int, abs_moment_k1: float, t, N: int):
    """4 N^{-(k-1)/2} |t|^{k+1} E|X|^{k+1} / (k+1)!, valid for |t| <= c1 sqrt(N)."""
    t = np.asarray(t, dtype=float)
    out = 4.0 * N ** (-(k - 1) / 2.0) * np.abs(t) ** (k + 1) * abs_moment_k1 / math.factorial(k + 1)
    return float(out) if out.ndim == 0 else out


def lemma_local1_envelope(k: int, abs_moment_k1: float, t):
    """3 |t|^{k+1} E|X|^{k+1} / (k+1)!, a bound on |phi(t) - e^{-t^2/2}| for all t."""
    t = np.asarray(t, dtype=float)
    out = 3.0 * np.abs(t) ** (k + 1) * abs_moment_k1 / math.factorial(k + 1)
    return float(out) if out.ndim == 0 else out


def global_decay_bound(h: float, w: float, t0: float) -> float:
    """exp(-h w^3 t0^2 / 32), bounding |phi(t)| for |t| >= t0 when the density
    contains an h-by-w rectangle. Requires 0 < t0 <= 4/w."""
    if not (0.0 < t0 <= 4.0 / w):
        raise DomainError(f"global decay bound needs 0 < t0 <= 4/w = {4.0 / w}, got {t0}")
    return math.exp(-h * w**3 * t0 * t0 / 32.0)
