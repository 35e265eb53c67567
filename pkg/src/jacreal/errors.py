"""Exception hierarchy shared by every module of the package."""


class JacrealError(Exception):
    """Base class for all errors raised by jacreal."""


class UsageError(JacrealError, ValueError):
    """An argument violates an operation's precondition."""


class FieldMismatchError(UsageError):
    """Operands live over different coefficient fields."""


class FactorizationError(JacrealError):
    """A polynomial could not be factored by the implemented strategy."""


class InvariantViolation(JacrealError, AssertionError):
    """An internal consistency check failed; this indicates a bug."""


class ParseError(UsageError):
    """Syntax error in a problem file."""

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
