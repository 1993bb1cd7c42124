"""Exception hierarchy shared by all modules."""


class NowhereDenseError(Exception):
    """Base class for every error raised by this package."""


class InputError(NowhereDenseError, ValueError):
    """An argument is out of range or malformed."""


class GraphFormatError(InputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(NowhereDenseError, ValueError):
    """The operation is undefined on this input (e.g. radius of a disconnected graph)."""


class OracleGuardError(NowhereDenseError, ValueError):
    """A brute-force oracle refused an instance above its size guard."""


class PropertyViolation(NowhereDenseError, AssertionError):
    """A checked invariant did not hold; signals a bug, not bad input."""


class BudgetExceeded(NowhereDenseError, RuntimeError):
    """Splitter needed more rounds or a larger deletion set than allowed."""


class DenseInputError(NowhereDenseError, RuntimeError):
    """The augmentation in-degree passed the configured ceiling."""
