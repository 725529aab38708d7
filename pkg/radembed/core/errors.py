"""Exception hierarchy shared by every layer of the package."""


class EmbeddingError(Exception):
    """Base class for all errors raised by radembed."""


class UndefinedAtPole(EmbeddingError):
    """An exponent function was evaluated at one of its poles."""


class EmptyRange(EmbeddingError):
    """A parameter range is degenerate."""


class EmptyAdmissible(EmbeddingError):
    """No candidate parameter produced a nonempty exponent interval."""


class InvalidSpec(EmbeddingError):
    """A domain object violates its invariants."""


class UnsupportedCombination(EmbeddingError):
    """A potential (or a ratio of potentials) leaves the supported family."""


class NonIntegrable(EmbeddingError):
    """A quadrature produced a non-finite value."""


class DegenerateFit(EmbeddingError):
    """Too few usable points for a slope fit."""


class ZeroFunction(EmbeddingError):
    """A ratio was requested for the zero function."""


class PreconditionViolated(EmbeddingError):
    """A numeric precondition failed on the sampled grid."""


class BranchDomain(EmbeddingError):
    """Parameters fall outside the branch of an inequality they were routed to."""
