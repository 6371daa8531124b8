"""Exception hierarchy shared by every module.

All errors derive from :class:`MajurError` (itself a ``ValueError``) so callers
can catch the whole family at once; the CLI maps them onto exit codes.
"""


class MajurError(ValueError):
    pass


class ZeroVector(MajurError):
    pass


class DimensionMismatch(MajurError):
    pass


class NotHermitian(MajurError):
    pass


class NotConverged(MajurError):
    pass


class NegativeComponent(MajurError):
    pass


class TotalMismatch(MajurError):
    pass


class EmptySet(MajurError):
    pass


class NegativeIncrement(MajurError):
    pass


class InvalidState(MajurError):
    pass


class InvalidMeasurement(MajurError):
    pass


class UnknownName(MajurError):
    pass


class LambdaOutOfRange(MajurError):
    pass


class WeightMismatch(MajurError):
    pass


class BudgetExceeded(MajurError):
    """Raised when a subset enumeration would need more eigenvalue calls than allowed."""


class ZeroComponent(MajurError):
    """A log-product measure was asked to evaluate ``log 0``."""
