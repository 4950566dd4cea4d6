"""Hazard-loss matrices and per-loop UCA tables as Markdown or CSV."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from ..analysis.rubric import CellState, expand_rubric
from ..analysis.validate import ensure_indexed, validate
from ..diagnostics import StpaError
from ..model import GUIDEWORDS, IdKind, IndexedModel, LossCategory, StpaModel

TARGETS = ("markdown", "csv")
_ALIASES = {"md": "markdown", "markdown": "markdown", "csv": "csv"}


def _target(target: str) -> str:
    try:
        return _ALIASES[target]
    except KeyError:
        raise ValueError(f"unsupported table target {target!r} (expected markdown or csv)") from None


def _require_valid(idx: IndexedModel) -> None:
    errors = [d for d in validate(idx) if d.is_error]
    if errors:
        codes = ", ".join(sorted({d.code for d in errors}))
        raise StpaError("E040", f"model has {len(errors)} validation error(s) ({codes})")


@dataclass(frozen=True)
class HazardLossMatrix:
    hazards: tuple[str, ...]
    losses: tuple[str, ...]
    marks: tuple[tuple[bool, ...], ...]  # marks[row][col]

    def marked(self, hazard: str, loss: str) -> bool:
        return self.marks[self.hazards.index(hazard)][self.losses.index(loss)]


def _marked_losses(idx: IndexedModel, hazard: str) -> set[str]:
    # direct losses unioned with every ancestor's
    hazards = idx.by_kind[IdKind.HAZARD]
    found: set[str] = set()
    visited: set[str] = set()
    node = hazard
    while node in hazards and node not in visited:
        visited.add(node)
        found.update(hazards[node].leads_to)
        node = hazards[node].parent
    return found


def hazard_loss_matrix(model: StpaModel | IndexedModel) -> HazardLossMatrix:
    idx = ensure_indexed(model)
    hazards = tuple(idx.by_kind[IdKind.HAZARD])
    losses = tuple(idx.by_kind[IdKind.LOSS])
    marks = []
    for h in hazards:
        reached = _marked_losses(idx, h)
        marks.append(tuple(loss in reached for loss in losses))
    return HazardLossMatrix(hazards, losses, tuple(marks))


def _md_cell(text: str) -> str:
    return text.replace("\\", "\\\\").replace("|", "\\|").replace("\n", "<br>")


def _md_table(header: list[str], rows: list[list[str]], align: list[str]) -> list[str]:
    lines = ["| " + " | ".join(_md_cell(h) for h in header) + " |",
             "|" + "|".join(align) + "|"]
    for row in rows:
        lines.append("| " + " | ".join(_md_cell(c) for c in row) + " |")
    return lines


def _csv(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def render_hazard_table(model: StpaModel | IndexedModel, target: str = "markdown") -> str:
    """One row per hazard, one column per loss, "X" where the hazard leads to the loss.

    Markdown output ends with a legend mapping loss ids to titles.
    """
    target = _target(target)
    idx = ensure_indexed(model)
    _require_valid(idx)
    matrix = hazard_loss_matrix(idx)
    hazards = idx.by_kind[IdKind.HAZARD]
    header = ["Hazard", "Title", *matrix.losses]
    rows = [[h, hazards[h].title, *("X" if m else "" for m in marks)]
            for h, marks in zip(matrix.hazards, matrix.marks)]
    if target == "csv":
        return _csv([c.lower() if i < 2 else c for i, c in enumerate(header)], rows)
    lines = _md_table(header, rows, [" --- ", " --- "] + [" :-: "] * len(matrix.losses))
    if matrix.losses:
        lines += ["", "Losses:", ""]
        for loss in idx.iter_kind(IdKind.LOSS):
            suffix = "" if loss.category is LossCategory.UNSPECIFIED else f" ({loss.category.value})"
            lines.append(f"- {loss.id}: {_md_cell(loss.title)}{suffix}")
    return "\n".join(lines) + "\n"


def render_uca_table(model: StpaModel | IndexedModel, loop_id: str,
                     target: str = "markdown") -> str:
    """The guideword grid of one loop with UCA contexts and hazard ids in each cell.

    N/A cells read "N/A"; unassessed cells stay empty so gaps remain visible.
    """
    target = _target(target)
    idx = ensure_indexed(model)
    grid = expand_rubric(idx, loop_id)
    _require_valid(idx)
    ucas = idx.by_kind[IdKind.UCA]
    actions = idx.by_kind[IdKind.ACTION]
    csv_out = target == "csv"
    escape = (lambda t: t) if csv_out else _md_cell
    joiner = "\n" if csv_out else "<br>"

    rows = []
    for aid in grid.actions:
        label = f"{aid}: {actions[aid].name}" if aid in actions else aid
        row = [escape(label)]
        for cell in grid.row(aid):
            if cell.state is CellState.NOT_APPLICABLE:
                row.append("N/A")
            elif cell.state is CellState.ASSESSED:
                parts = []
                for uid in cell.ucas:
                    u = ucas[uid]
                    refs = "[" + ", ".join(u.hazards) + "]"
                    parts.append(escape(f"{u.context} {refs}" if u.context else refs))
                row.append(joiner.join(parts))
            else:
                row.append("")
        rows.append(row)

    header = ["Control Action", *(gw.label for gw in GUIDEWORDS)]
    if csv_out:
        return _csv(header, rows)
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join([" --- "] * len(header)) + "|"]
    lines += ["| " + " | ".join(row) + " |" for row in rows]
    return "\n".join(lines) + "\n"
