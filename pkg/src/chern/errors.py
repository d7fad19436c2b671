"""Exception hierarchy shared by the whole package.

User-facing problems (bad input, bad arguments, computations that did not
settle within the configured budget) derive from :class:`ChernError`; the CLI
maps them to exit code 2.  :class:`InvariantError` signals a bug and maps to
exit code 3.
"""


class ChernError(Exception):
    """Base class for user-level errors."""


class StructuralError(ChernError):
    """Operands live in incompatible rings (variable count, field, modulus)."""


class ArgumentError(ChernError, ValueError):
    """An argument violates an operation's precondition."""


class NotStabilized(ChernError):
    """A function table was too short for its polynomial to have settled."""

    def __init__(self, message, n_max=None):
        super().__init__(message)
        self.n_max = n_max


class ResourceError(ChernError):
    """A request exceeds a configured cap (table length, corpus size)."""


class ParseError(ChernError):
    """Syntax error in polynomial or script text, with a 1-based position."""

    def __init__(self, message, line=None, column=None, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        where = f"{line}:{column}: " if line is not None else ""
        if self.expected:
            message = f"{message} (expected {', '.join(self.expected)})"
        super().__init__(where + message)


class SemanticError(ChernError):
    """Well-formed script text that refers to unknown or invalid objects."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(where + message)


class InvariantError(Exception):
    """An internal consistency check failed."""
