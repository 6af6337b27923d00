"""Exception hierarchy shared by the whole package."""


class CritvarError(Exception):
    """Base class for all package errors."""


class UsageError(CritvarError):
    """Malformed arguments, indices out of range, invalid configuration."""


class DomainError(CritvarError):
    """Input outside the mathematical domain: pole evaluation, zero momentum
    in a chart, z on the discriminant where an off-discriminant point is
    required."""


class NumericError(CritvarError):
    """Floating-point pipeline failure: non-convergence, rank anomaly."""


class GenerationError(NumericError):
    """Random generic-instance sampling exhausted its retry budget."""
