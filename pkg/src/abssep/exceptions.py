"""Exception hierarchy.

Everything raised on bad user input derives from :class:`ValidationError`, so the
CLI can map the whole family to one exit code.
"""


class AbsSepError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(AbsSepError, ValueError):
    """Input rejected before any computation ran."""


class WrongLength(ValidationError):
    pass


class NegativeEigenvalue(ValidationError):
    pass


class BadSum(ValidationError):
    pass


class WrongDims(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class UnsupportedP(ValidationError):
    pass


class ZeroVector(ValidationError):
    pass


class IndexOutOfRange(ValidationError, IndexError):
    pass


class OutOfRange(ValidationError):
    pass


class DimensionTooLarge(ValidationError):
    pass


class NoConvergence(AbsSepError, ArithmeticError):
    """Jacobi sweeps ran out before the off-diagonal mass vanished."""


class InternalInconsistency(AbsSepError, AssertionError):
    """Two criteria that can never disagree on valid input did disagree.

    Seeing this means a bug in the package, not in the caller's data.
    """
