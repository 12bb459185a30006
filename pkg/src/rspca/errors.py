"""Exception types shared across the package."""


class RspcaError(Exception):
    """Base class for all rspca errors."""


class DataError(RspcaError, ValueError):
    """Invalid input data or arguments (CLI exit code 2)."""


class NumericalError(RspcaError, RuntimeError):
    """A numerical routine failed to converge (CLI exit code 3).

    ``matrix`` holds the offending matrix when one is available.
    """

    def __init__(self, message: str, matrix=None):
        super().__init__(message)
        self.matrix = matrix
