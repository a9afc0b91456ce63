"""Exception hierarchy. The CLI maps each family to an exit code."""


class ManifoldError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class UsageError(ManifoldError, ValueError):
    """Invalid arguments: bad dimensions, unknown kinds, incompatible types."""

    exit_code = 2


class DimensionError(UsageError):
    pass


class StructureError(UsageError):
    """A matrix lacks required structure (e.g. skew-symmetry)."""


class DomainError(UsageError):
    """A scalar argument lies outside the domain of a bound function."""


class NumericalError(ManifoldError, ArithmeticError):
    exit_code = 3


class NormalizationError(NumericalError):
    """Tangent pair is not orthonormal in the metric a formula requires."""


class DegenerateSectionError(NumericalError):
    """The two tangents do not span a 2-plane."""


class VerificationError(ManifoldError):
    """A bound, inequality or attainment check failed."""

    exit_code = 4
