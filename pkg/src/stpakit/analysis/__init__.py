"""Validation rules, guideword grids, coverage, traceability and counts."""

from .rubric import Cell, CellState, CoverageReport, LoopCoverage, UcaGrid, coverage, expand_rubric
from .stats import Stats, stats
from .trace import ForwardTrace, TracePath, losses_reached, trace_back, trace_forward
from .validate import validate

__all__ = [
    "Cell", "CellState", "CoverageReport", "ForwardTrace", "LoopCoverage", "Stats",
    "TracePath", "UcaGrid", "coverage", "expand_rubric", "losses_reached", "stats",
    "trace_back", "trace_forward", "validate",
]
