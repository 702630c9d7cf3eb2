"""Exception hierarchy shared by every hedcs module."""

from __future__ import annotations


class HedcsError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(HedcsError, ValueError):
    """A numeric parameter is outside its legal range."""


class DomainError(ParameterError):
    """Inputs are individually legal but jointly outside a formula's domain."""


class GraphError(HedcsError):
    """An update is not legal for the current graph."""


class DuplicateEdgeError(GraphError):
    pass


class MissingEdgeError(GraphError, KeyError):
    pass


class DegreeCapError(GraphError):
    pass


class EdgeCapError(GraphError):
    pass


class SizeExceededError(HedcsError):
    """A desk-scale size guard refused the input."""


class TraceError(HedcsError):
    """A trace file is malformed or replays illegally."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvariantViolation(HedcsError):
    """Raised by the harness when a verifier rejects the engine state."""

    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__(str(verdict))
