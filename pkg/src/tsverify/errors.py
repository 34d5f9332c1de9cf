"""Exception types raised across the package."""


class TsverifyError(Exception):
    """Base class for all package errors."""


class NotInScale(TsverifyError):
    """A coordinate is not a point of the time scale (within tolerance)."""


class ReversedInterval(TsverifyError):
    """An integration interval has its endpoints out of order."""


class UnsupportedKind(TsverifyError):
    """An operation is not defined for this kind of time scale."""


class AtScaleMax(TsverifyError):
    """A delta derivative was requested at the maximum of the scale."""


class DomainTooSmall(TsverifyError):
    """A box does not contain enough scale points for the requested operation."""


class OutOfRange(TsverifyError):
    """An evaluation point lies outside the admissible region."""


class OutOfOctantRange(OutOfRange):
    """An evaluation point lies outside [sigma(base), b] on some axis."""


class BadInterval(TsverifyError):
    """Interval endpoints do not both belong to the scale."""


class NotUnitIntegerScale(TsverifyError):
    """A check that requires unit-step integer scales got something else."""


class UnknownFamily(TsverifyError):
    """A function literal names a family the package does not provide."""


class InvalidFunction(TsverifyError):
    """A function is unusable: non-finite grid values, or tabulated data
    that does not match its grid."""


class ParseError(TsverifyError):
    """A config document is not syntactically valid."""


class ValidationError(TsverifyError):
    """A config document is well formed but violates a constraint."""
