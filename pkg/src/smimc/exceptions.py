"""Exception hierarchy shared by every module of the package."""


class SmithFormError(Exception):
    """Base class for all errors raised by smimc."""

    #: process exit status used by the command line front end
    exit_code = 10


class NonFiniteInput(SmithFormError, ValueError):
    exit_code = 2


class DimensionMismatch(SmithFormError, ValueError):
    exit_code = 7


class MismatchedShapes(DimensionMismatch):
    exit_code = 7


class PointMismatch(SmithFormError, ValueError):
    exit_code = 7


class RankDeficientL(SmithFormError):
    """A least squares system that should be full column rank is not."""


class EvalAtPole(SmithFormError, ValueError):
    exit_code = 5


class NegativeShiftOnNonzeroEntry(SmithFormError):
    """A monomial scaling would create a negative power on a nonzero entry."""


class InsufficientSeriesOrder(SmithFormError):
    """A truncated series ran out of known coefficients."""

    exit_code = 3


class MaxOrderExceeded(SmithFormError):
    """The rank search did not reach the normal rank within the order cap."""

    exit_code = 4


class RankDecrease(SmithFormError):
    """The frozen block lost numerical full column rank during the search."""

    exit_code = 4


class NormalRankExceeded(SmithFormError):
    """A rank increment pushed the running rank above the given normal rank."""

    exit_code = 4


class IncompleteProfile(SmithFormError):
    pass


class NoZeroAtPoint(SmithFormError):
    """No structural index is positive, so there are no root vectors."""


class DegenerateDraw(SmithFormError):
    exit_code = 6


class ParseError(SmithFormError, ValueError):
    exit_code = 2


class ZeroFunctionError(SmithFormError):
    """Raised where an identically zero matrix function has no meaningful answer."""

    exit_code = 9
