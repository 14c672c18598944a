"""Exception hierarchy shared by the library, the DSL and the CLI."""
from __future__ import annotations

from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from bialgebroid.core.reports import CheckReport


class AlgebroidError(Exception):
    """Base class for every error raised by the package."""


class StructureMismatchError(AlgebroidError, ValueError):
    """Operands live over different patches, ranks or kinds."""


class DegreeError(AlgebroidError, ValueError):
    """Degree underflow or mismatch in a graded operation."""


class IndexRangeError(AlgebroidError, IndexError):
    """A coordinate or frame index is out of range."""


class ValidationError(AlgebroidError):
    """A validated wrapper (Cocycle, JacobiStructure, ...) was refused.

    The failing `CheckReport` is attached so callers can render the
    counterexample.
    """

    def __init__(self, message: str, report: Optional["CheckReport"] = None):
        super().__init__(message)
        self.report = report


class DslError(AlgebroidError):
    """Error raised while reading a structure file."""

    def __init__(self, message: str, line: int = 0, column: int = 0, token: Optional[str] = None):
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        super().__init__(self.__str__())

    def __str__(self) -> str:
        text = self.message if self.line == 0 else f"{self.line}:{self.column}: {self.message}"
        if self.token is not None:
            return f"{text} (at {self.token!r})"
        return text


class DslSyntaxError(DslError):
    pass


class DslSemanticError(DslError):
    pass
