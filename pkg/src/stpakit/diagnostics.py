"""Diagnostics shared by the parser, the validator and the CLI.

Every finding carries exactly one code from :data:`CATALOG`.  Codes are
stable: ``E`` codes are parse/reference/usage errors, ``R`` codes are STPA
well-formedness rules, ``W`` codes are advisories.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


@dataclass(frozen=True, order=True)
class SourceSpan:
    """A 1-based (line, column) position plus a length in characters."""

    line: int
    column: int
    length: int = 1

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1:
            raise ValueError(f"span must be 1-based, got {self.line}:{self.column}")
        if self.length < 0:
            raise ValueError("span length must be non-negative")

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


# code -> (default severity, one-line summary)
CATALOG: dict[str, tuple[Severity, str]] = {
    "E001": (Severity.ERROR, "unterminated string literal"),
    "E002": (Severity.ERROR, "illegal character"),
    "E010": (Severity.ERROR, "duplicate identifier"),
    "E011": (Severity.ERROR, "unknown keyword or property"),
    "E012": (Severity.ERROR, "unexpected token"),
    "E013": (Severity.ERROR, "invalid enumeration value"),
    "E014": (Severity.ERROR, "missing or repeated model header"),
    "E020": (Severity.ERROR, "reference to undeclared identifier"),
    "E030": (Severity.ERROR, "unknown control loop"),
    "E031": (Severity.ERROR, "unknown identifier for trace"),
    "E040": (Severity.ERROR, "model has validation errors"),
    "R001": (Severity.ERROR, "hazard leads to no loss and has no parent"),
    "R002": (Severity.ERROR, "UCA references no hazard or a missing action"),
    "R003": (Severity.WARNING, "loss not referenced by any hazard"),
    "R004": (Severity.ERROR, "control/feedback direction violates entity kinds"),
    "R005": (Severity.ERROR, "requirement or scenario derives from nothing"),
    "R006": (Severity.WARNING, "guideword cell neither assessed nor marked N/A"),
    "R007": (Severity.WARNING, "UCA not covered by any loss scenario"),
    "R008": (Severity.ERROR, "cycle in hazard refinement chain"),
    "R009": (Severity.INFO, "open control loop (no feedback)"),
    "R010": (Severity.ERROR, "duplicate UCA for the same action, guideword and context"),
    "R011": (Severity.ERROR, "control loop without control actions"),
    "R012": (Severity.ERROR, "N/A mark conflicts with an assessed or N/A cell"),
    "W001": (Severity.WARNING, "empty title"),
}


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    message: str
    span: SourceSpan | None = None
    related: tuple[str, ...] = ()
    # additional locations, e.g. the first declaration of a duplicate id
    other_spans: tuple[SourceSpan, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.code not in CATALOG:
            raise ValueError(f"unknown diagnostic code {self.code!r}")

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def render(self, path: str | None = None) -> str:
        where = []
        if path:
            where.append(path)
        if self.span is not None:
            where.append(f"{self.span.line}:{self.span.column}")
        prefix = ":".join(where)
        text = f"{self.severity.value}[{self.code}]: {self.message}"
        if self.other_spans:
            also = ", ".join(str(s) for s in self.other_spans)
            text += f" (see also {also})"
        return f"{prefix}: {text}" if prefix else text

    def to_dict(self, path: str | None = None) -> dict:
        out: dict = {}
        if path is not None:
            out["file"] = path
        out["severity"] = self.severity.value
        out["code"] = self.code
        out["message"] = self.message
        if self.span is not None:
            out["line"] = self.span.line
            out["column"] = self.span.column
            out["length"] = self.span.length
        out["related"] = list(self.related)
        if self.other_spans:
            out["other_spans"] = [[s.line, s.column, s.length] for s in self.other_spans]
        return out

    def to_json_line(self, path: str | None = None) -> str:
        return json.dumps(self.to_dict(path), ensure_ascii=False)


def make(code: str, message: str, span: SourceSpan | None = None,
         related: tuple[str, ...] | list[str] = (), *,
         other_spans: tuple[SourceSpan, ...] = ()) -> Diagnostic:
    """Build a diagnostic whose severity comes from the catalog."""
    severity = CATALOG[code][0]
    return Diagnostic(severity, code, message, span, tuple(related), tuple(other_spans))


def has_errors(diags) -> bool:
    return any(d.is_error for d in diags)


class StpaError(Exception):
    """An operation failed with a catalogued error code."""

    def __init__(self, code: str, message: str) -> None:
        self.code = code
        self.diagnostic = make(code, message)
        super().__init__(f"{code}: {message}")
