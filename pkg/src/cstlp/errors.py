"""Exception types raised across the package."""

from __future__ import annotations


class CstlpError(Exception):
    """Base class for all package-specific errors."""


class ShapeError(CstlpError):
    """Array dimensions do not match the declared tableau/problem shape."""


class ZeroPivot(CstlpError):
    """Pivot entry is zero within tolerance; the exchange is undefined."""


class NotTerminal(CstlpError):
    """Terminal classification requested on a tableau that still admits a
    non-zero-indicator pivot."""


class InfeasibleBounds(CstlpError):
    """A variable has lower bound strictly above its upper bound."""


class TooLarge(CstlpError):
    """Problem exceeds the exhaustive oracle's size guard."""


class IterationLimit(CstlpError):
    """Solve loop exhausted its iteration budget.

    Carries the partial report (everything recorded up to the stop) in
    ``report``.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class MpsError(CstlpError):
    """Malformed MPS input. ``line`` is the 1-based offending line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnknownSection(MpsError):
    pass


class DuplicateRow(MpsError):
    pass


class UndeclaredReference(MpsError):
    pass


class MalformedNumber(MpsError):
    pass
