"""Exception hierarchy.

Three families map onto the CLI exit codes: usage problems (1), bad input
data (2) and numerical failures (3).
"""


class LebesgueError(Exception):
    """Base class for all package errors."""

    exit_code = 3


class InvalidArgumentError(LebesgueError, ValueError):
    exit_code = 1


class DataError(LebesgueError):
    exit_code = 2


class NumericalError(LebesgueError):
    exit_code = 3


class InsufficientRecurrenceError(InvalidArgumentError):
    pass


class DegreeTooHighError(InvalidArgumentError):
    pass


class PositiveSpectrumRequiredError(InvalidArgumentError):
    pass


class EmptyMeasureError(DataError):
    pass


class EmptyInputError(DataError):
    pass


class InvalidMeasureError(DataError):
    pass


class ParseError(DataError):
    def __init__(self, message, line=None, path=None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)
        self.line = line
        self.path = path


class ColumnSpecError(DataError):
    pass


class InvalidMatrixError(NumericalError):
    pass


class GramNotPositiveDefiniteError(NumericalError):
    """Triangular factorization broke down.

    ``minor`` is the order (1-based) of the first leading minor that is not
    positive.
    """

    def __init__(self, minor, message=None):
        self.minor = minor
        super().__init__(message or f"Gram matrix is not positive definite: leading minor {minor} fails")


class DegenerateMeasureError(GramNotPositiveDefiniteError):
    pass


class DegenerateStateError(NumericalError):
    pass


class DegenerateConstructionError(NumericalError):
    pass


class RankDeficientMeasureError(NumericalError):
    pass


class DegeneratePointError(NumericalError):
    pass
