"""Exception hierarchy shared by every module of the package."""


class KaucherError(Exception):
    """Base class for all errors raised by this package."""


class ArithmeticOverflowError(KaucherError, ArithmeticError):
    """An operation produced a non-finite endpoint or entry."""


class ZeroInProjectionError(KaucherError, ZeroDivisionError):
    """Division or inversion by an interval whose proper projection holds zero."""


class ShapeError(KaucherError, ValueError):
    """Operands have incompatible shapes."""


class SingularMatrixError(KaucherError, ArithmeticError):
    """A point matrix failed the pivot-based nonsingularity test."""


class SplittingError(KaucherError):
    """No valid splitting of the interval matrix could be built."""


class StartFailureError(KaucherError):
    """The Newton starting (midpoint) system is singular."""


class BoundUnavailableError(KaucherError):
    """An a-priori error bound was requested for a non-contractive matrix."""


class ProblemSyntaxError(KaucherError, ValueError):
    """Malformed problem or solution text, tagged with its location."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{loc}: {message}"
        super().__init__(message)
