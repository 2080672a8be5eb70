"""Mixed atomic + step-density probability laws.

A law is a finite set of atoms together with a piecewise-constant density.
This is enough to represent the perturbed Bernoulli family ``mu_hw`` (two
atoms at +-x plus a centred box of height h and width w) and anything a user
assembles from atoms and boxes in a JSON literal.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, GeometryError, LawError, NoDensityError, TotalMassError
from .specfun import gaussian_moment

__all__ = [
    "MASS_TOL",
    "Atom",
    "StepPiece",
    "MixedLaw",
    "DensityRectangle",
    "MomentProfile",
    "make_mixed_law",
    "mu_hw",
    "bernoulli_support",
    "delta_N",
    "nu_N",
    "moment",
    "abs_moment",
    "moment_profile",
    "matching_order",
    "density_rectangle",
    "law_from_json",
    "law_to_json",
]

MASS_TOL = 1e-12


@dataclass(frozen=True)
class Atom:
    location: float
    mass: float


@dataclass(frozen=True)
class StepPiece:
    lo: float
    hi: float
    height: float

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mass(self) -> float:
        return self.height * (self.hi - self.lo)


@dataclass(frozen=True)
class MixedLaw:
    """Atoms sorted by location, steps sorted and pairwise disjoint.

    Build through :func:`make_mixed_law`, which normalises and validates.
    """

    atoms: tuple[Atom, ...]
    steps: tuple[StepPiece, ...]

    @property
    def total_mass(self) -> float:
        return math.fsum([a.mass for a in self.atoms] + [p.mass for p in self.steps])

    @property
    def atomic_mass(self) -> float:
        return math.fsum(a.mass for a in self.atoms)

    def cdf(self, s: float) -> float:
        """Right-continuous distribution function."""
        terms = [a.mass for a in self.atoms if a.location <= s]
        for p in self.steps:
            if s >= p.hi:
                terms.append(p.mass)
            elif s > p.lo:
                terms.append(p.height * (s - p.lo))
        return min(1.0, math.fsum(terms))


@dataclass(frozen=True)
class DensityRectangle:
    a: float
    w: float
    h: float

    def __post_init__(self):
        if not (0.0 < self.h <= 1.0 and 0.0 < self.w <= 1.0):
            raise DomainError(f"rectangle needs 0 < h, w <= 1, got h={self.h}, w={self.w}")

    @property
    def merit(self) -> float:
        """h * w**3, the quantity driving the exponential term of the bound."""
        return self.h * self.w**3


@dataclass(frozen=True)
class MomentProfile:
    k: int
    abs_moment_k1: float
    m_k1: float


def _check_finite(*values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise LawError(f"non-finite value {v!r} in law literal")


def _merge_steps(steps: Sequence[StepPiece]) -> tuple[StepPiece, ...]:
    """Sum overlapping boxes into disjoint pieces; join equal-height neighbours."""
    if not steps:
        return ()
    cuts = sorted({p.lo for p in steps} | {p.hi for p in steps})
    pieces: list[StepPiece] = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        height = math.fsum(p.height for p in steps if p.lo <= lo and hi <= p.hi)
        if height <= 0.0:
            continue
        if pieces and pieces[-1].hi == lo and pieces[-1].height == height:
            pieces[-1] = StepPiece(pieces[-1].lo, hi, height)
        else:
            pieces.append(StepPiece(lo, hi, height))
    return tuple(pieces)


def make_mixed_law(atoms: Iterable, steps: Iterable) -> MixedLaw:
    """Validate and normalise a law literal.

    ``atoms`` holds ``(location, mass)`` pairs and ``steps`` holds
    ``(lo, hi, height)`` triples (or the corresponding dataclasses).
    Overlapping steps add their heights, repeated atom locations add their
    masses, and zero-mass entries are dropped.

    Raises
    ------
    GeometryError
        A step with ``lo >= hi``.
    TotalMassError
        Total mass differs from one by more than ``MASS_TOL``.
    LawError
        Negative masses or heights, non-finite entries.
    """
    merged: dict[float, float] = {}
    for item in atoms:
        loc, mass = (item.location, item.mass) if isinstance(item, Atom) else item
        loc, mass = float(loc), float(mass)
        _check_finite(loc, mass)
        if mass < 0.0:
            raise LawError(f"atom at {loc} has negative mass {mass}")
        if mass > 0.0:
            merged[loc] = merged.get(loc, 0.0) + mass
    atom_list = tuple(Atom(loc, m) for loc, m in sorted(merged.items()))

    raw_steps = []
    for item in steps:
        lo, hi, height = (item.lo, item.hi, item.height) if isinstance(item, StepPiece) else item
        lo, hi, height = float(lo), float(hi), float(height)
        _check_finite(lo, hi, height)
        if lo >= hi:
            raise GeometryError(f"step [{lo}, {hi}) has lo >= hi")
        if height < 0.0:
            raise LawError(f"step [{lo}, {hi}) has negative height {height}")
        raw_steps.append(StepPiece(lo, hi, height))

    law = MixedLaw(atoms=atom_list, steps=_merge_steps(raw_steps))
    total = law.total_mass
    if abs(total - 1.0) > MASS_TOL:
        raise TotalMassError(f"total mass {total!r} differs from 1 by more than {MASS_TOL}")
    return law


def _check_hw(h: float, w: float) -> None:
    if not (0.0 < h <= 1.0 and 0.0 < w <= 1.0):
        raise DomainError(f"mu_hw needs 0 < h, w <= 1, got h={h}, w={w}")
    if h * w >= 1.0:
        raise DomainError(f"mu_hw needs h*w < 1, got h*w={h * w}")


def bernoulli_support(h: float, w: float) -> float:
    """Atom location x making the variance of ``mu_hw`` equal to one.

    ``h = 0`` is accepted and gives the pure Bernoulli value ``x = 1``.
    """
    return math.sqrt((1.0 - h * w**3 / 12.0) / (1.0 - h * w))


def mu_hw(h: float, w: float) -> MixedLaw:
    """Symmetric mixture of Bernoulli(+-x) with weight 1-hw and a box of
    height h on [-w/2, w/2], scaled to unit variance."""
    _check_hw(h, w)
    x = bernoulli_support(h, w)
    p = 0.5 * (1.0 - h * w)
    return make_mixed_law([(-x, p), (x, p)], [(-0.5 * w, 0.5 * w, h)])


def delta_N(N: int) -> float:
    return 4.0 * (math.log(N) / N) ** 0.25


def nu_N(N: int) -> MixedLaw:
    """``mu_hw`` with ``h = w = 4 (log N / N)^(1/4)``."""
    if N < 2:
        raise DomainError(f"nu_N needs N >= 2, got {N}")
    d = delta_N(N)
    if d > 1.0:
        raise DomainError(f"delta_N = {d:.6g} > 1 for N = {N}")
    return mu_hw(d, d)


def moment(law: MixedLaw, j: int) -> float:
    """E[X^j], integrating each box in closed form."""
    if j < 0:
        raise ValueError(f"moment order must be non-negative, got {j}")
    terms = [a.mass * a.location**j for a in law.atoms]
    terms += [p.height * (p.hi ** (j + 1) - p.lo ** (j + 1)) / (j + 1) for p in law.steps]
    return math.fsum(terms)


def abs_moment(law: MixedLaw, r: int) -> float:
    """E|X|^r; boxes straddling the origin are split there."""
    if r < 0:
        raise ValueError(f"moment order must be non-negative, got {r}")
    terms = [a.mass * abs(a.location) ** r for a in law.atoms]
    for p in law.steps:
        if p.lo >= 0.0 or p.hi <= 0.0:
            lo, hi = sorted((abs(p.lo), abs(p.hi)))
            terms.append(p.height * (hi ** (r + 1) - lo ** (r + 1)) / (r + 1))
        else:
            terms.append(p.height * ((-p.lo) ** (r + 1) + p.hi ** (r + 1)) / (r + 1))
    return math.fsum(terms)


def matching_order(law: MixedLaw, max_order: int = 12, tol: float = 1e-12) -> int:
    """Largest k such that E[X^j] equals the Gaussian moment for j = 1..k.

    Returns 0 when even the mean is off.
    """
    k = 0
    for j in range(1, max_order + 1):
        target = gaussian_moment(j)
        if abs(moment(law, j) - target) > tol * max(1.0, target):
            break
        k = j
    return k


def moment_profile(law: MixedLaw, k: int | None = None) -> MomentProfile:
    """Matching order k with E|X|^(k+1) and its (k+1)-th root.

    If ``k`` is given it is checked against the law's moments.
    """
    found = matching_order(law)
    if k is None:
        k = found
    if k < 2 or found < k:
        raise DomainError(f"law matches Gaussian moments only up to order {found}, need k={k} >= 2")
    e = abs_moment(law, k + 1)
    return MomentProfile(k=k, abs_moment_k1=e, m_k1=e ** (1.0 / (k + 1)))


def density_rectangle(law: MixedLaw) -> DensityRectangle:
    """Rectangle under the step density maximising h * w**3.

    Candidates are the maximal constant-height runs of the density, with
    height and width each clamped to 1. Ties go to the leftmost run.
    """
    if not law.steps:
        raise NoDensityError("law is purely atomic")
    best = None
    for p in law.steps:
        h = min(p.height, 1.0)
        w = min(p.width, 1.0)
        if best is None or h * w**3 > best.h * best.w**3:
            best = DensityRectangle(a=p.lo, w=w, h=h)
    return best


def law_from_json(text_or_obj) -> MixedLaw:
    """Parse ``{"atoms": [[loc, mass], ...], "steps": [[lo, hi, height], ...]}``."""
    obj = json.loads(text_or_obj) if isinstance(text_or_obj, (str, bytes)) else text_or_obj
    if not isinstance(obj, dict) or set(obj) - {"atoms", "steps"}:
        raise LawError("law literal must be an object with keys 'atoms' and 'steps'")
    try:
        atoms = [(float(a), float(m)) for a, m in obj.get("atoms", [])]
        steps = [(float(lo), float(hi), float(ht)) for lo, hi, ht in obj.get("steps", [])]
    except (TypeError, ValueError) as exc:
        raise LawError(f"malformed law literal: {exc}") from None
    return make_mixed_law(atoms, steps)


def law_to_json(law: MixedLaw) -> str:
    return json.dumps(
        {
            "atoms": [[a.location, a.mass] for a in law.atoms],
            "steps": [[p.lo, p.hi, p.height] for p in law.steps],
        }
    )
