"""Author, validate and query STPA hazard analyses written in the ``.stpa`` text format."""

from .analysis import coverage, expand_rubric, stats, trace_back, trace_forward, validate
from .diagnostics import Diagnostic, Severity, SourceSpan, StpaError
from .dsl import format_model, parse, tokenize
from .model import GUIDEWORDS, Guideword, IdKind, IndexedModel, StpaModel, index_model
from .report import export_dot, export_json, import_json, render_hazard_table, render_uca_table

__version__ = "0.1.0"

__all__ = [
    "Diagnostic", "GUIDEWORDS", "Guideword", "IdKind", "IndexedModel", "Severity",
    "SourceSpan", "StpaError", "StpaModel", "coverage", "expand_rubric", "export_dot",
    "export_json", "format_model", "import_json", "index_model", "parse",
    "render_hazard_table", "render_uca_table", "stats", "tokenize", "trace_back",
    "trace_forward", "validate",
]
