"""Numerical verification of fast Berry-Esseen bounds.

Builds perturbed Bernoulli laws, computes certified and Monte Carlo
Kolmogorov-Smirnov distances of their normalised i.i.d. sums to the standard
Gaussian, and evaluates the explicit bounds and constants that control them.
"""
__version__ = "0.1.0"

from .errors import (
    BerrylabError,
    BudgetError,
    DomainError,
    GeometryError,
    LawError,
    NoDensityError,
    QuadratureError,
    SearchExhausted,
    StabilityError,
    TotalMassError,
    TruncationError,
)
from .laws import (
    Atom,
    DensityRectangle,
    MixedLaw,
    MomentProfile,
    StepPiece,
    abs_moment,
    density_rectangle,
    make_mixed_law,
    moment,
    moment_profile,
    mu_hw,
    nu_N,
)
from .charfun import cf_eval, cf_pow_rescaled, envelope_constants
from .exactdist import CertifiedProb, SumCdf, exact_sum_cdf, irwin_hall_cdf
from .ksmetric import KSMode, KSResult, ks_empirical, ks_exact_mu_hw, paper_L, smoothing_upper_bound
from .bounds import (
    BoundReport,
    cor_symmetric_rhs,
    example_1_4_check,
    reverse_condition,
    thm_main2_rhs,
    thm_main_rhs,
    thm_reverse_witness,
)
from .montecarlo import SeedSpec, sample_law, sample_normalized_sum
