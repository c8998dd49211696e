"""Exception hierarchy shared by the library and the CLI."""


class BentParityError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(BentParityError, ValueError):
    """An argument lies outside the domain of an operation."""


class FormatError(BentParityError, ValueError):
    """Malformed textual input.

    ``line`` and ``column`` are 1-based when known.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class PreconditionError(BentParityError, ValueError):
    """A construction was asked to run on an input that violates its hypothesis."""


class ResourceError(BentParityError, ValueError):
    """A brute-force routine was asked to run beyond its size limit."""


class ConsistencyError(BentParityError, RuntimeError):
    """An internal self-check failed. This signals a bug, not bad input."""
