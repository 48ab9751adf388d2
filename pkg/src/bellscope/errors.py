"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class BellscopeError(Exception):
    exit_code = 1


class MalformedFileError(BellscopeError):
    exit_code = 1


class NumericalError(BellscopeError):
    exit_code = 2


class PreconditionError(BellscopeError, ValueError):
    exit_code = 3


class EnumerationTooLarge(BellscopeError):
    exit_code = 4


class NotPSD(NumericalError):
    """Raised by psd_sqrt when the input has a clearly negative eigenvalue."""

    def __init__(self, min_eigenvalue: float):
        super().__init__(f"matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")
        self.min_eigenvalue = min_eigenvalue
