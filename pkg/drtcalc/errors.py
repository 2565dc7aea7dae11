"""
Exception hierarchy for drtcalc.

Every error raised on purpose by the package derives from DrtError, so the CLI
can map it to exit code 2 without swallowing programming errors.
"""
from typing import Optional


class DrtError(Exception):
    """Base class for all drtcalc errors."""


class TermError(DrtError):
    """Ill-formed term: unbound variable, unknown action, malformed specification."""


class GuardednessError(DrtError):
    """A recursive specification is not syntactically guarded at the given depth."""


class DegenerateIterationError(DrtError):
    """Time iteration with period 0 (X = t + X is unguarded)."""


class StateBoundExceeded(DrtError):
    """Exploration produced more states than the configured bound."""

    def __init__(self, bound: int):
        super().__init__(f"state bound exceeded ({bound} states)")
        self.bound = bound


class RewriteError(DrtError):
    """Normalization refused or ran out of budget."""


class ModelError(DrtError):
    """Syntax or name-resolution error in a model file."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class ParError(DrtError):
    """Invalid PAR parameters, or a check whose precondition (cycle condition) fails."""
