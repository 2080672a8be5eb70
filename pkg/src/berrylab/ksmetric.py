"""Kolmogorov-Smirnov distance to the standard Gaussian.

Three routes: a certified sup for ``mu_hw`` sums built on the exact CDF, the
empirical statistic of a sample with a DKW radius, and the smoothing
inequality ``4/L + (1/pi) int_{-L}^{L} |psi(t) - e^{-t^2/2}| / |t| dt``
evaluated by quadrature.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass

import numpy as np

from .bounds import smoothing_cutoff
from .charfun import envelope_constants, gauss_gap
from .errors import BudgetError, DomainError
from .exactdist import sum_cdf
from .laws import MixedLaw, moment_profile
from .quadrature import adaptive_simpson
from .specfun import PHI_ABS_ERR, std_normal_cdf

__all__ = [
    "KSMode",
    "KSResult",
    "ks_exact_mu_hw",
    "ks_empirical",
    "dkw_radius",
    "smoothing_upper_bound",
    "paper_L",
]


class KSMode(enum.Enum):
    CERTIFIED = "certified"
    STATISTICAL = "statistical"


@dataclass(frozen=True)
class KSResult:
    distance: float
    err: float
    mode: KSMode
    arg_s: float

    @property
    def lower(self) -> float:
        return max(0.0, self.distance - self.err)

    @property
    def upper(self) -> float:
        return min(1.0, self.distance + self.err)

    def to_dict(self) -> dict:
        return {"distance": self.distance, "err": self.err, "mode": self.mode.value, "arg_s": self.arg_s}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def ks_exact_mu_hw(
    h: float,
    w: float,
    N: int,
    tol: float = 1e-6,
    initial_panels: int = 16,
    max_evals: int = 10**7,
) -> KSResult:
    """Certified sup_s |F_N(s) - Phi(s)| for normalised sums of ``mu_hw``.

    ``h = 0`` gives the pure Bernoulli(+-1) case.

    F_N jumps only at the lattice points of the all-Bernoulli term and is
    continuous in between, so the sup is searched over the closed gaps
    between consecutive jumps using one-sided values at the ends.  On a
    sub-interval [a, b] of a gap, monotonicity of F and Phi gives

        F(a) - Phi(b) <= F(s) - Phi(s) <= F(b) - Phi(a),

    and sub-intervals whose bound exceeds the best value found by more than
    ``tol`` are bisected.  The returned ``err`` covers the remaining gap plus
    the evaluation error of F and Phi, so the true distance lies in
    ``[distance - err, distance + err]``.

    Raises
    ------
    TruncationError
        The binomial mixture cannot be truncated at j <= 40.
    BudgetError
        More than ``max_evals`` CDF evaluations were needed.
    """
    sc = sum_cdf(float(h), float(w), int(N), max(1e-12, tol / 4.0))
    jumps, sizes = sc.jump_points()
    n_gaps = jumps.size - 1
    if n_gaps < 1:
        raise DomainError("need at least two lattice points")
    # lattice mass at or left of each gap's left end
    level = np.cumsum(sizes)[:-1]

    def F_inside(s, lat):
        v, e = sc.continuous_part(s)
        return v + lat, e

    # candidate values just outside the support
    fc_ends, e_ends = sc.continuous_part(np.array([jumps[0], jumps[-1]]))
    phi_ends = std_normal_cdf(np.array([jumps[0], jumps[-1]]))
    cand = [
        (abs(fc_ends[0] - phi_ends[0]), float(jumps[0])),
        (abs(fc_ends[1] + sizes.sum() - phi_ends[1]), float(jumps[-1])),
    ]
    max_err = float(e_ends.max())

    M = initial_panels
    frac = np.linspace(0.0, 1.0, M + 1)
    nodes = jumps[:-1, None] + (jumps[1:] - jumps[:-1])[:, None] * frac[None, :]
    lat = np.repeat(level[:, None], M + 1, axis=1)
    F, E = F_inside(nodes.ravel(), lat.ravel())
    F = F.reshape(nodes.shape)
    P = std_normal_cdf(nodes)
    max_err = max(max_err, float(E.max()))
    evals = nodes.size + 2

    D = np.abs(F - P)
    i_best = np.unravel_index(np.argmax(D), D.shape)
    cand.append((float(D[i_best]), float(nodes[i_best])))
    best, arg = max(cand)

    a, b = nodes[:, :-1].ravel(), nodes[:, 1:].ravel()
    Fa, Fb = F[:, :-1].ravel(), F[:, 1:].ravel()
    Pa, Pb = P[:, :-1].ravel(), P[:, 1:].ravel()
    La = lat[:, :-1].ravel()
    settled_ub = best
    min_width = 64 * np.finfo(float).eps * max(1.0, abs(jumps[-1]))

    while a.size:
        ub = np.maximum(Fb - Pa, Pb - Fa)
        open_ = ub > best + tol
        stuck = open_ & ((b - a) <= min_width)
        done = ~open_ | stuck
        if np.any(done):
            settled_ub = max(settled_ub, float(ub[done].max()))
        a, b, Fa, Fb, Pa, Pb, La = (arr[~done] for arr in (a, b, Fa, Fb, Pa, Pb, La))
        if not a.size:
            break
        m = 0.5 * (a + b)
        Fm, Em = F_inside(m, La)
        Pm = std_normal_cdf(m)
        evals += m.size
        if evals > max_evals:
            raise BudgetError(f"KS refinement exceeded {max_evals} evaluations")
        max_err = max(max_err, float(Em.max()))
        Dm = np.abs(Fm - Pm)
        k = int(np.argmax(Dm))
        if Dm[k] > best:
            best, arg = float(Dm[k]), float(m[k])
        a, b = np.concatenate((a, m)), np.concatenate((m, b))
        Fa, Fb = np.concatenate((Fa, Fm)), np.concatenate((Fm, Fb))
        Pa, Pb = np.concatenate((Pa, Pm)), np.concatenate((Pm, Pb))
        La = np.concatenate((La, La))

    point_err = max_err + PHI_ABS_ERR
    lo = best - point_err
    hi = max(best, settled_ub) + point_err
    return KSResult(
        distance=min(1.0, 0.5 * (lo + hi)),
        err=0.5 * (hi - lo),
        mode=KSMode.CERTIFIED,
        arg_s=arg,
    )


def dkw_radius(n: int, conf: float) -> float:
    """sqrt(ln(2/(1-conf)) / (2n)), the two-sided DKW band at level conf."""
    return math.sqrt(math.log(2.0 / (1.0 - conf)) / (2.0 * n))


def ks_empirical(samples, conf: float = 0.99) -> KSResult:
    """Empirical KS statistic of a sorted sample against Phi with a DKW radius."""
    s = np.asarray(samples, dtype=float)
    n = s.size
    if n < 1:
        raise ValueError("need at least one sample")
    if not 0.0 < conf < 1.0:
        raise ValueError(f"confidence must lie in (0, 1), got {conf}")
    if np.any(np.diff(s) < 0):
        raise ValueError("samples must be sorted ascending")
    phi = std_normal_cdf(s)
    i = np.arange(1, n + 1)
    d = np.maximum(np.abs(i / n - phi), np.abs((i - 1) / n - phi))
    k = int(np.argmax(d))
    return KSResult(distance=float(d[k]), err=dkw_radius(n, conf), mode=KSMode.STATISTICAL, arg_s=float(s[k]))


def paper_L(h: float, w: float, k: int, m_k1: float, N: int) -> float:
    """Smoothing cut-off 2 pi exp(h w^3 c0^2 N / 32)."""
    return smoothing_cutoff(h, w, envelope_constants(k, m_k1).c0, N)


T_MIN = 1e-3


def smoothing_upper_bound(
    law: MixedLaw,
    N: int,
    L: float,
    quad_tol: float = 1e-6,
    *,
    k: int | None = None,
    cf=None,
) -> float:
    """Upper bound on d_KS(S_N, G) from the smoothing inequality.

    The integrand is even in t.  On [0, 1e-3] it is bounded in closed form:
    ``|phi(t/sqrt N)^N - e^{-t^2/2}| <= N |phi(t/sqrt N) - e^{-t^2/(2N)}|``
    together with the single-summand envelope ``3|u|^{k+1} E|X|^{k+1}/(k+1)!``.
    The rest is integrated by adaptive Simpson, split at ``c0 sqrt(N)``, and
    ``quad_tol`` is added to the result.

    ``cf`` optionally replaces ``t -> |phi(t/sqrt N)^N - e^{-t^2/2}|`` (a
    vectorised callable); the near-zero bound still uses ``law``'s moments.
    """
    if not 0 < L < math.inf:
        raise DomainError(f"L must be positive and finite, got {L}")
    prof = moment_profile(law, k)
    kk, E = prof.k, prof.abs_moment_k1
    gap = cf if cf is not None else (lambda t: gauss_gap(law, t, N))

    t_min = min(T_MIN, L)
    near = 3.0 * N ** (-(kk - 1) / 2.0) * E * t_min ** (kk + 1) / ((kk + 1) * math.factorial(kk + 1))

    def integrand(t):
        return np.asarray(gap(t), dtype=float) / t

    split = envelope_constants(kk, prof.m_k1).local_range(N)
    cuts = [t_min] + ([split] if t_min < split < L else []) + [L]
    # both half-lines, scaled by 1/pi: a half-line tolerance of pi*tol/2 gives tol overall
    pieces = [adaptive_simpson(integrand, lo, hi, 0.5 * math.pi * quad_tol / (len(cuts) - 1))
              for lo, hi in zip(cuts[:-1], cuts[1:])]
    integral = 2.0 * (near + math.fsum(v for v, _ in pieces))
    return 4.0 / L + integral / math.pi + quad_tol
