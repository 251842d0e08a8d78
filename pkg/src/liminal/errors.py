"""Exception types raised across the package."""


class LiminalError(Exception):
    """Base class for every error raised by this package."""


class DegenerateSubstitution(LiminalError, ArithmeticError):
    pass


class PoleAtZero(LiminalError, ArithmeticError):
    pass


class OutOfRange(LiminalError, ValueError):
    pass


class DimensionMismatch(LiminalError, ValueError):
    pass


class BadStatistic(LiminalError, ValueError):
    pass


class UnsupportedField(LiminalError, ValueError):
    pass


class TooLarge(LiminalError, ValueError):
    """Raised when an enumeration would exceed the desk-scale guard."""


class InternalInconsistency(LiminalError, RuntimeError):
    """Two independent computations of the same object disagree.

    This always signals a bug, never bad user input.
    """


class IntegralityViolation(InternalInconsistency):
    pass
