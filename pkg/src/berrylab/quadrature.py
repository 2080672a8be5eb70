"""Adaptive Simpson quadrature with absolute error control.

Panels are refined level by level so the integrand is called on whole
arrays of abscissae at once.
"""
from __future__ import annotations

from collections.abc import Callable

import numpy as np

from .errors import QuadratureError

__all__ = ["adaptive_simpson"]


def adaptive_simpson(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float,
    initial_panels: int = 64,
    max_subdivisions: int = 10**6,
) -> tuple[float, float]:
    """Integrate a vectorised ``f`` over [a, b] to absolute tolerance ``tol``.

    A panel of width ``h`` is accepted once ``|S2 - S1| / 15 <= tol * h / (b - a)``,
    where S1 is its Simpson value and S2 the sum over its two halves.
    Accepted panels contribute the Richardson-extrapolated ``S2 + (S2 - S1)/15``.

    Returns
    -------
    (value, error_estimate)

    Raises
    ------
    QuadratureError
        If more than ``max_subdivisions`` panel splits are needed.
    """
    if b == a:
        return 0.0, 0.0
    if b < a:
        v, e = adaptive_simpson(f, b, a, tol, initial_panels, max_subdivisions)
        return -v, e
    total = b - a
    x = np.linspace(a, b, 2 * initial_panels + 1)
    fx = np.asarray(f(x), dtype=float)
    lo, hi = x[:-2:2], x[2::2]
    flo, fmid, fhi = fx[:-2:2], fx[1:-1:2], fx[2::2]

    value = 0.0
    err = 0.0
    splits = 0
    while lo.size:
        mid = 0.5 * (lo + hi)
        h = hi - lo
        q = np.concatenate((0.5 * (lo + mid), 0.5 * (mid + hi)))
        fq = np.asarray(f(q), dtype=float)
        fl, fr = fq[: lo.size], fq[lo.size :]
        s1 = h / 6.0 * (flo + 4.0 * fmid + fhi)
        s2 = h / 12.0 * (flo + 4.0 * fl + 2.0 * fmid + 4.0 * fr + fhi)
        delta = (s2 - s1) / 15.0
        ok = np.abs(delta) <= tol * h / total
        # panels that cannot be split further are accepted as they are
        ok |= h <= 64 * np.finfo(float).eps * max(abs(a), abs(b), 1.0)
        value += float(np.sum(s2[ok] + delta[ok]))
        err += float(np.sum(np.abs(delta[ok])))
        keep = ~ok
        splits += int(keep.sum())
        if splits > max_subdivisions:
            raise QuadratureError(f"adaptive Simpson exceeded {max_subdivisions} subdivisions on [{a}, {b}]")
        lo_k, mid_k, hi_k = lo[keep], mid[keep], hi[keep]
        lo = np.concatenate((lo_k, mid_k))
        hi = np.concatenate((mid_k, hi_k))
        flo = np.concatenate((flo[keep], fmid[keep]))
        fhi = np.concatenate((fmid[keep], fhi[keep]))
        fmid = np.concatenate((fl[keep], fr[keep]))
    return value, err
