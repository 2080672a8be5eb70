"""Exception hierarchy shared by all berrylab modules."""


class BerrylabError(Exception):
    """Base class for every error raised by this package."""


class DomainError(BerrylabError, ValueError):
    """Parameters fall outside the region where a construction or bound is defined."""


class LawError(BerrylabError, ValueError):
    """Malformed law literal (negative mass, non-finite value, ...)."""


class TotalMassError(LawError):
    pass


class GeometryError(LawError):
    pass


class NoDensityError(BerrylabError, ValueError):
    """The law has no absolutely continuous part."""


class StabilityError(BerrylabError):
    """Requested Irwin-Hall order exceeds the supported cap."""


class TruncationError(BerrylabError):
    """Binomial tail beyond the Irwin-Hall cap is heavier than the tolerance allows."""


class BudgetError(BerrylabError):
    """Adaptive refinement exhausted its evaluation budget."""


class QuadratureError(BerrylabError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class SearchExhausted(BerrylabError):
    """No witness was found in the searched range."""
