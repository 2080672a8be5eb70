"""Right-hand sides of the forward and reverse Berry-Esseen statements."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .charfun import envelope_constants
from .errors import DomainError, SearchExhausted
from .laws import abs_moment, delta_N, mu_hw, nu_N

__all__ = [
    "EXAMPLE_MIN_N",
    "BoundReport",
    "thm_main_rhs",
    "cor_symmetric_rhs",
    "leading_constant",
    "exponent_constant",
    "smoothing_cutoff",
    "thm_main2_rhs",
    "ExampleReport",
    "example_1_4_check",
    "ReverseVerdict",
    "reverse_condition",
    "ReverseWitness",
    "thm_reverse_witness",
]

EXAMPLE_MIN_N = 100_000


def _check_common(k: int, abs_moment_k1: float, h: float, w: float, N: int, k_min: int) -> None:
    if k < k_min:
        raise DomainError(f"need k >= {k_min}, got {k}")
    if not abs_moment_k1 >= 1.0:
        raise DomainError(f"E|X|^(k+1) must be >= 1 for a unit-variance law, got {abs_moment_k1}")
    if not (0.0 < h <= 1.0 and 0.0 < w <= 1.0):
        raise DomainError(f"need 0 < h, w <= 1, got h={h}, w={w}")
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")


def thm_main_rhs(k: int, abs_moment_k1: float, h: float, w: float, N: int) -> float:
    """3 { E|X|^{k+1} / N^{(k-1)/2} + exp(-h w^3 N / (160 E|X|^{k+1})) }."""
    _check_common(k, abs_moment_k1, h, w, N, k_min=3)
    E = abs_moment_k1
    return 3.0 * (E / N ** ((k - 1) / 2.0) + math.exp(-h * w**3 * N / (160.0 * E)))


def cor_symmetric_rhs(m4: float, h: float, w: float, N: int) -> float:
    """Symmetric unit-variance case: the k = 3 bound with E[X^4]."""
    return thm_main_rhs(3, m4, h, w, N)


def leading_constant(k: int) -> float:
    """C(k) = 2^{k+3} Gamma((k+1)/2) / (sqrt(pi) (k+1)!)."""
    return math.exp((k + 3) * math.log(2.0) + math.lgamma(0.5 * (k + 1)) - math.lgamma(k + 2)) / math.sqrt(math.pi)


def exponent_constant(k: int, m_k1: float) -> float:
    """1/160 ^ ((k+1)/m)^2 / 640 ^ ((k+1)/m)^{2(k+1)/(k-1)} / 10."""
    r = (k + 1) / m_k1
    return min(1.0 / 160.0, r * r / 640.0, r ** (2.0 * (k + 1) / (k - 1)) / 10.0)


@dataclass(frozen=True)
class BoundReport:
    k: int
    abs_moment_k1: float
    h: float
    w: float
    N: int
    rhs_thm_main: float | None
    rhs_cor_sym: float | None
    rhs_thm_main2: float
    C_k: float
    c_tilde: float
    c0: float
    L: float

    @property
    def vacuous(self) -> bool:
        """True when even the sharper bound exceeds 1 (d_KS <= 1 always)."""
        return self.rhs_thm_main2 > 1.0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["vacuous"] = self.vacuous
        d["vacuous_thm_main"] = self.rhs_thm_main is not None and self.rhs_thm_main > 1.0
        return d


def smoothing_cutoff(h: float, w: float, c0: float, N: int) -> float:
    """2 pi exp(h w^3 c0^2 N / 32), inf once it leaves the double range."""
    e = h * w**3 * c0 * c0 * N / 32.0
    return 2.0 * math.pi * math.exp(e) if e < 700.0 else math.inf


def thm_main2_rhs(k: int, abs_moment_k1: float, h: float, w: float, N: int) -> BoundReport:
    """C(k) E|X|^{k+1} / N^{(k-1)/2} + 3 exp(-c~ h w^3 N), with every constant recorded.

    The simpler bound (and its symmetric k = 3 form) is filled in when
    ``k >= 3``.
    """
    _check_common(k, abs_moment_k1, h, w, N, k_min=2)
    E = abs_moment_k1
    m = E ** (1.0 / (k + 1))
    C = leading_constant(k)
    ct = exponent_constant(k, m)
    c0 = envelope_constants(k, m).c0
    rhs2 = C * E / N ** ((k - 1) / 2.0) + 3.0 * math.exp(-ct * h * w**3 * N)
    main = thm_main_rhs(k, E, h, w, N) if k >= 3 else None
    return BoundReport(
        k=k,
        abs_moment_k1=E,
        h=h,
        w=w,
        N=N,
        rhs_thm_main=main,
        rhs_cor_sym=main if k == 3 else None,
        rhs_thm_main2=rhs2,
        C_k=C,
        c_tilde=ct,
        c0=c0,
        L=smoothing_cutoff(h, w, c0, N),
    )


@dataclass(frozen=True)
class ExampleReport:
    N: int
    delta: float
    delta_sq: float
    delta_sq_ok: bool
    fourth_moment: float
    fourth_moment_cap: float
    fourth_moment_ok: bool
    rhs: float  # symmetric bound evaluated with E[X^4] = (5/4)^2
    rhs_actual: float  # same bound with the exact fourth moment
    rhs_times_N: float
    verdict: bool

    def rows(self) -> list[tuple[str, str, bool]]:
        return [
            ("delta_N^2 <= 0.2", f"{self.delta_sq:.6g}", self.delta_sq_ok),
            ("E[X^4] <= (5/4)^2", f"{self.fourth_moment:.6g}", self.fourth_moment_ok),
            ("bound <= 8/N", f"{self.rhs_times_N:.6g}/N", self.rhs * self.N <= 8.0),
        ]


def example_1_4_check(N: int) -> ExampleReport:
    """Check the chain delta_N^2 <= 0.2, E[X^4] <= (5/4)^2, bound <= 8/N for nu_N."""
    if N < EXAMPLE_MIN_N:
        raise DomainError(f"example needs N >= {EXAMPLE_MIN_N}, got {N}")
    d = delta_N(N)
    law = nu_N(N)
    m4 = abs_moment(law, 4)
    cap = (5.0 / 4.0) ** 2
    rhs = cor_symmetric_rhs(cap, d, d, N)
    rhs_actual = cor_symmetric_rhs(m4, d, d, N)
    ok_d = d * d <= 0.2
    ok_m = m4 <= cap
    return ExampleReport(
        N=N,
        delta=d,
        delta_sq=d * d,
        delta_sq_ok=ok_d,
        fourth_moment=m4,
        fourth_moment_cap=cap,
        fourth_moment_ok=ok_m,
        rhs=rhs,
        rhs_actual=rhs_actual,
        rhs_times_N=rhs * N,
        verdict=ok_d and ok_m and rhs <= 8.0 / N and rhs_actual <= rhs,
    )


@dataclass(frozen=True)
class ReverseVerdict:
    admissible: bool
    lower: float | None
    hw: float
    hw3N: float


def reverse_condition(h: float, w: float, N: int) -> ReverseVerdict:
    """Admissible iff hw <= 1/2 and h w^3 N <= 1/24; then d_KS >= 1/(50 sqrt N)."""
    if not (0.0 < h <= 1.0 and 0.0 < w <= 1.0):
        raise DomainError(f"need 0 < h, w <= 1, got h={h}, w={w}")
    hw, hw3N = h * w, h * w**3 * N
    ok = hw <= 0.5 and hw3N <= 1.0 / 24.0
    return ReverseVerdict(admissible=ok, lower=1.0 / (50.0 * math.sqrt(N)) if ok else None, hw=hw, hw3N=hw3N)


@dataclass(frozen=True)
class ReverseWitness:
    N: int
    h: float
    w: float
    lhs_lower: float  # 1/(50 sqrt N), a lower bound on d_KS
    rhs_value: float  # C{2/N + exp(-(c/2) 3^{rho+rho'-4} N^{(rho+rho')/4})}
    rhs_actual: float  # C{E/N + exp(-c h^{1-rho} w^{3-rho'} N / E)} with the law's E|X|^4
    fourth_moment: float


def thm_reverse_witness(C: float, c: float, rho: float, rho_prime: float, max_log2: int = 60) -> ReverseWitness:
    """Search N = 2^0, ..., 2^max_log2 for a witness that no bound of the form
    C{E|X|^4/N + exp(-c h^{1-rho} w^{3-rho'} N / E|X|^4)} holds for every
    law with an h-by-w density rectangle.

    At h = w = N^{-1/4}/3 the reverse lemma gives d_KS >= 1/(50 sqrt N),
    while E|X|^4 <= 2 bounds the right-hand side by
    C{2/N + exp(-(c/2) 3^{rho+rho'-4} N^{(rho+rho')/4})}.  The first N where
    the lower bound beats that is returned; nothing is sampled.

    Raises
    ------
    SearchExhausted
        If no N <= 2^max_log2 works (always the case when rho = rho' = 0).
    """
    if C <= 0 or c <= 0:
        raise DomainError(f"need C, c > 0, got C={C}, c={c}")
    if rho < 0 or rho_prime < 0:
        raise DomainError(f"need rho, rho' >= 0, got {rho}, {rho_prime}")
    p = rho + rho_prime
    for i in range(max_log2 + 1):
        N = 2**i
        lhs = 1.0 / (50.0 * math.sqrt(N))
        rhs = C * (2.0 / N + math.exp(-0.5 * c * 3.0 ** (p - 4.0) * N ** (p / 4.0)))
        if lhs > rhs:
            h = w = N ** -0.25 / 3.0
            m4 = abs_moment(mu_hw(h, w), 4)
            actual = C * (m4 / N + math.exp(-c * h ** (1.0 - rho) * w ** (3.0 - rho_prime) * N / m4))
            return ReverseWitness(N=N, h=h, w=w, lhs_lower=lhs, rhs_value=rhs, rhs_actual=actual, fourth_moment=m4)
    raise SearchExhausted(
        f"no N <= 2^{max_log2} with 1/(50 sqrt N) > C(2/N + ...) for C={C}, c={c}, rho={rho}, rho'={rho_prime}"
    )
