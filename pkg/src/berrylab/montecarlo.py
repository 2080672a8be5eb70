"""Deterministic, chunked Monte Carlo sampling of mixed laws and their
normalised sums.

Streams
-------
A :class:`SeedSpec` ``(master_seed, stream_index)`` is mapped to a 64-bit
substream seed by

    substream = mix64(master_seed XOR (0x9E3779B97F4A7C15 * stream_index mod 2^64))

where ``mix64`` is the splitmix64 finaliser::

    z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
    z ^= z >> 27; z *= 0x94D049BB133111EB
    z ^= z >> 31                                   (all mod 2^64)

Both steps are bijections of 64-bit words, so distinct stream indices give
distinct substreams.  Work is cut into chunks of 2**16 output draws; chunk c
is generated by a Philox-4x64 counter generator keyed with the 128-bit word
``(substream, c)``.  Every output is therefore a pure function of the inputs
and the seed: thread count only changes which worker computes a chunk, and
results are assembled by chunk index.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import special

from .laws import MixedLaw

__all__ = [
    "CHUNK",
    "GOLDEN",
    "SeedSpec",
    "mix64",
    "default_threads",
    "chunk_generator",
    "sample_law",
    "sample_normalized_sum",
    "sample_gaussian",
]

CHUNK = 1 << 16
GOLDEN = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1
# bound on uniforms drawn per block inside a chunk (memory, not semantics)
_BLOCK_ELEMS = 1 << 22


def mix64(z: int) -> int:
    z &= _MASK
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & _MASK
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & _MASK
    z ^= z >> 31
    return z


@dataclass(frozen=True)
class SeedSpec:
    master_seed: int
    stream_index: int = 0

    def __post_init__(self):
        if not 0 <= self.master_seed <= _MASK:
            raise ValueError(f"master_seed must be a 64-bit unsigned integer, got {self.master_seed}")
        if self.stream_index < 0:
            raise ValueError(f"stream_index must be >= 0, got {self.stream_index}")

    @property
    def substream(self) -> int:
        return mix64(self.master_seed ^ ((GOLDEN * self.stream_index) & _MASK))


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("BERRYLAB_THREADS", "1")))
    except ValueError:
        return 1


def chunk_generator(seed: SeedSpec, chunk: int) -> np.random.Generator:
    key = np.array([seed.substream, chunk], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


class _Sampler:
    """Inverse-CDF sampling over the mixture components of a law."""

    def __init__(self, law: MixedLaw):
        masses = [a.mass for a in law.atoms] + [p.mass for p in law.steps]
        cum = np.cumsum(masses)
        self.cum = cum / cum[-1]
        self.n_atoms = len(law.atoms)
        self.lo = np.array([a.location for a in law.atoms] + [p.lo for p in law.steps])
        self.width = np.array([0.0] * len(law.atoms) + [p.width for p in law.steps])

    def draw(self, rng: np.random.Generator, n: int) -> np.ndarray:
        u = rng.random(2 * n)
        comp = np.minimum(np.searchsorted(self.cum, u[:n], side="right"), self.cum.size - 1)
        return self.lo[comp] + self.width[comp] * u[n:]


def _chunk_sums(sampler: _Sampler, N: int, rows: int, rng: np.random.Generator) -> np.ndarray:
    out = np.empty(rows)
    step = max(1, _BLOCK_ELEMS // N)
    scale = 1.0 / math.sqrt(N)
    for r0 in range(0, rows, step):
        r1 = min(rows, r0 + step)
        x = sampler.draw(rng, (r1 - r0) * N).reshape(r1 - r0, N)
        out[r0:r1] = x.sum(axis=1) if N > 1 else x[:, 0]
    if N > 1:
        out *= scale
    return out


def _run_chunks(func, reps: int, threads: int | None) -> np.ndarray:
    n_chunks = -(-reps // CHUNK)
    sizes = [min(CHUNK, reps - c * CHUNK) for c in range(n_chunks)]
    threads = default_threads() if threads is None else max(1, int(threads))
    if threads == 1 or n_chunks == 1:
        parts = [func(c, sizes[c]) for c in range(n_chunks)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(func, range(n_chunks), sizes))
    return np.concatenate(parts)


def sample_normalized_sum(
    law: MixedLaw, N: int, reps: int, seed: SeedSpec, threads: int | None = None
) -> np.ndarray:
    """``reps`` independent draws of N^{-1/2}(X_1 + ... + X_N), chunk-ordered."""
    if N < 1 or reps < 1:
        raise ValueError(f"need N, reps >= 1, got N={N}, reps={reps}")
    sampler = _Sampler(law)
    return _run_chunks(lambda c, rows: _chunk_sums(sampler, N, rows, chunk_generator(seed, c)), reps, threads)


def sample_law(law: MixedLaw, n: int, seed: SeedSpec, threads: int | None = None) -> np.ndarray:
    """``n`` i.i.d. draws from ``law``; identical to the N = 1 normalised sum."""
    return sample_normalized_sum(law, 1, n, seed, threads)


def sample_gaussian(n: int, seed: SeedSpec, threads: int | None = None) -> np.ndarray:
    """Standard normal draws by inverse-CDF transform of the same streams."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return _run_chunks(lambda c, rows: special.ndtri(chunk_generator(seed, c).random(rows)), n, threads)
