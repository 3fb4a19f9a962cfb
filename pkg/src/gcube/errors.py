"""Error codes, checker exceptions, and machine-readable diagnostics."""
from __future__ import annotations

from dataclasses import dataclass


# One code per distinct rejection path of the kernel and frontend.
UNBOUND_VARIABLE = "UnboundVariable"
NOT_A_FUNCTION = "NotAFunction"
NOT_A_PAIR = "NotAPair"
NOT_A_PATH = "NotAPath"
FACE_NOT_COVERED = "FaceNotCovered"
SYSTEM_INCOMPATIBLE = "SystemIncompatible"
DELAYED_SUBST_MISMATCH = "DelayedSubstMismatch"
UNIVERSE_EXPECTED = "UniverseExpected"
CONVERSION_FAILURE = "ConversionFailure"
ENDPOINT_MISMATCH = "EndpointMismatch"
CANNOT_INFER = "CannotInfer"
SYNTAX_ERROR = "SyntaxError"

USER_ERROR_CODES = (
    UNBOUND_VARIABLE,
    NOT_A_FUNCTION,
    NOT_A_PAIR,
    NOT_A_PATH,
    FACE_NOT_COVERED,
    SYSTEM_INCOMPATIBLE,
    DELAYED_SUBST_MISMATCH,
    UNIVERSE_EXPECTED,
    CONVERSION_FAILURE,
    ENDPOINT_MISMATCH,
    CANNOT_INFER,
)


Span = tuple[tuple[int, int], tuple[int, int]]  # ((line, col), (line, col)), 1-based


class IllTyped(Exception):
    """Internal kernel invariant breach.  Signals a bug, not a user error."""


@dataclass
class TypeCheckError(Exception):
    """A rejection by the type checker, tagged with its rule's error code."""

    code: str
    message: str
    span: Span | None = None
    expected: str | None = None
    actual: str | None = None
    context: str | None = None

    def __str__(self) -> str:
        parts = [f"{self.code}: {self.message}"]
        if self.expected is not None:
            parts.append(f"  expected: {self.expected}")
        if self.actual is not None:
            parts.append(f"  actual:   {self.actual}")
        if self.context:
            parts.append(f"  in context {self.context}")
        return "\n".join(parts)


@dataclass
class ParseError(Exception):
    message: str
    span: Span | None = None

    def __str__(self) -> str:
        return f"{SYNTAX_ERROR}: {self.message}"


@dataclass
class Diagnostic:
    """One machine-readable report entry; schema is stable and versioned."""

    severity: str
    code: str
    message: str
    file: str
    start: tuple[int, int]
    end: tuple[int, int]

    SCHEMA_VERSION = 1

    def to_json(self) -> dict:
        return {
            "severity": self.severity,
            "code": self.code,
            "message": self.message,
            "file": self.file,
            "start": list(self.start),
            "end": list(self.end),
        }

    @staticmethod
    def from_error(err: Exception, file: str) -> "Diagnostic":
        span: Span | None
        if isinstance(err, TypeCheckError):
            code, message, span = err.code, str(err), err.span
        elif isinstance(err, ParseError):
            code, message, span = SYNTAX_ERROR, err.message, err.span
        else:
            code, message, span = "InternalError", str(err), None
        if span is None:
            span = ((1, 1), (1, 1))
        return Diagnostic("error", code, message, file, span[0], span[1])
