"""Guideword-grid expansion and coverage arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..diagnostics import StpaError
from ..model import GUIDEWORDS, Guideword, IdKind, IndexedModel, StpaModel
from .validate import ensure_indexed


class CellState(str, Enum):
    ASSESSED = "assessed"
    NOT_APPLICABLE = "not_applicable"
    UNASSESSED = "unassessed"


@dataclass(frozen=True)
class Cell:
    action: str
    guideword: Guideword
    state: CellState
    ucas: tuple[str, ...] = ()
    justification: str = ""


@dataclass(frozen=True)
class UcaGrid:
    """One row per control action of a loop, one cell per guideword."""

    loop: str
    actions: tuple[str, ...]
    cells: tuple[Cell, ...]  # row-major, guidewords in column order

    def cell(self, action: str, guideword: Guideword) -> Cell:
        row = self.actions.index(action)
        return self.cells[row * len(GUIDEWORDS) + GUIDEWORDS.index(guideword)]

    def row(self, action: str) -> tuple[Cell, ...]:
        start = self.actions.index(action) * len(GUIDEWORDS)
        return self.cells[start:start + len(GUIDEWORDS)]

    def count(self, state: CellState) -> int:
        return sum(1 for c in self.cells if c.state is state)

    @property
    def total(self) -> int:
        return len(self.cells)


def expand_rubric(model: StpaModel | IndexedModel, loop_id: str) -> UcaGrid:
    """Lay every action of ``loop_id`` against the five guidewords.

    A cell with UCAs is assessed even if an N/A mark also names it; that
    conflict is reported separately by validation (R012).
    """
    idx = ensure_indexed(model)
    loop = idx.get(IdKind.LOOP, loop_id)
    if loop is None:
        raise StpaError("E030", f"unknown control loop {loop_id!r}")
    actions: list[str] = []
    for aid in loop.actions:
        if aid not in actions:
            actions.append(aid)
    ucas = idx.by_kind[IdKind.UCA]
    na = {}
    for mark in idx.model.na_marks:
        na.setdefault((mark.action, mark.guideword), mark.justification)
    cells = []
    for aid in actions:
        on_action = [ucas[u] for u in idx.action_to_ucas.get(aid, ())]
        for gw in GUIDEWORDS:
            hits = tuple(u.id for u in on_action if u.guideword is gw)
            if hits:
                cells.append(Cell(aid, gw, CellState.ASSESSED, ucas=hits))
            elif (aid, gw) in na:
                cells.append(Cell(aid, gw, CellState.NOT_APPLICABLE, justification=na[(aid, gw)]))
            else:
                cells.append(Cell(aid, gw, CellState.UNASSESSED))
    return UcaGrid(loop_id, tuple(actions), tuple(cells))


@dataclass(frozen=True)
class LoopCoverage:
    loop: str
    assessed: int
    not_applicable: int
    unassessed: int

    @property
    def total(self) -> int:
        return self.assessed + self.not_applicable + self.unassessed

    @property
    def ratio(self) -> float:
        """Covered share of cells; N/A counts as covered.  Empty grids score 0."""
        if not self.total:
            return 0.0
        return (self.assessed + self.not_applicable) / self.total


@dataclass(frozen=True)
class CoverageReport:
    loops: tuple[LoopCoverage, ...]

    @property
    def overall(self) -> LoopCoverage:
        return LoopCoverage(
            "*",
            sum(c.assessed for c in self.loops),
            sum(c.not_applicable for c in self.loops),
            sum(c.unassessed for c in self.loops),
        )

    def for_loop(self, loop_id: str) -> LoopCoverage:
        for c in self.loops:
            if c.loop == loop_id:
                return c
        raise StpaError("E030", f"unknown control loop {loop_id!r}")


def coverage(model: StpaModel | IndexedModel) -> CoverageReport:
    idx = ensure_indexed(model)
    rows = []
    for loop_id in idx.by_kind[IdKind.LOOP]:
        grid = expand_rubric(idx, loop_id)
        rows.append(LoopCoverage(
            loop_id,
            grid.count(CellState.ASSESSED),
            grid.count(CellState.NOT_APPLICABLE),
            grid.count(CellState.UNASSESSED),
        ))
    return CoverageReport(tuple(rows))
