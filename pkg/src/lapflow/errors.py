"""Exception hierarchy.

Two broad families matter for the CLI exit codes: ``GraphDataError`` (bad
input data, exit code 3) and ``NumericalError`` (a computation that started
but could not finish, exit code 4).
"""


class LapflowError(Exception):
    """Base class for all library errors."""


class GraphDataError(LapflowError):
    """Invalid or inconsistent input data."""


class DuplicateEdgeError(GraphDataError):
    pass


class SelfLoopError(GraphDataError):
    pass


class NonPositiveWeightError(GraphDataError):
    pass


class DimensionMismatchError(GraphDataError):
    pass


class IndexOutOfRangeError(GraphDataError):
    pass


class NotConnectedError(GraphDataError):
    pass


class InvalidPairError(GraphDataError):
    pass


class BadParamsError(GraphDataError):
    pass


class DegenerateComponentError(GraphDataError):
    pass


class ParseError(GraphDataError):
    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class EmptyInputError(GraphDataError):
    pass


class LengthMismatchError(GraphDataError):
    pass


class ConstantVectorError(GraphDataError):
    """Correlation is undefined on a constant score vector."""


class NumericalError(LapflowError):
    """A numerical routine failed to produce a usable result."""


class ConvergenceFailureError(NumericalError):
    def __init__(self, message, iterations=None, worst_residual=None):
        super().__init__(message)
        self.iterations = iterations
        self.worst_residual = worst_residual


class KTooLargeError(GraphDataError):
    pass


class SizeCapExceededError(GraphDataError):
    pass


class SingularShiftedMatrixError(NumericalError):
    """The shifted Laplacian was singular; the graph is disconnected."""


class SupplyNotBalancedError(GraphDataError):
    pass


class EmptyBasisError(GraphDataError):
    pass


class NonPositiveSigmaError(GraphDataError):
    pass


class InvalidOrderError(GraphDataError):
    pass


class SigmaOutOfRangeError(GraphDataError):
    pass


class WrongBasisSizeError(GraphDataError):
    pass


class BadAlphaError(GraphDataError):
    pass
