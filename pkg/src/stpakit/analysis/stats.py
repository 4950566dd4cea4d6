from __future__ import annotations

from dataclasses import dataclass

from ..model import GUIDEWORDS, IdKind, IndexedModel, LossCategory, StpaModel
from .validate import ensure_indexed


@dataclass(frozen=True)
class Stats:
    losses_by_category: dict[str, int]
    hazards: int
    entities: int
    actions: int
    feedbacks: int
    loops: int
    ucas_by_guideword: dict[str, int]
    na_marks: int
    scenarios: int
    requirements: int

    @property
    def losses(self) -> int:
        return sum(self.losses_by_category.values())

    @property
    def ucas(self) -> int:
        return sum(self.ucas_by_guideword.values())

    def to_dict(self) -> dict:
        return {
            "losses": self.losses,
            "losses_by_category": dict(self.losses_by_category),
            "hazards": self.hazards,
            "entities": self.entities,
            "actions": self.actions,
            "feedbacks": self.feedbacks,
            "loops": self.loops,
            "ucas": self.ucas,
            "ucas_by_guideword": dict(self.ucas_by_guideword),
            "na_marks": self.na_marks,
            "scenarios": self.scenarios,
            "requirements": self.requirements,
        }

    def to_text(self) -> str:
        lines = [f"losses: {self.losses}"]
        lines += [f"  {cat}: {n}" for cat, n in self.losses_by_category.items()]
        for name in ("hazards", "entities", "actions", "feedbacks", "loops"):
            lines.append(f"{name}: {getattr(self, name)}")
        lines.append(f"ucas: {self.ucas}")
        lines += [f"  {gw}: {n}" for gw, n in self.ucas_by_guideword.items()]
        for name in ("na_marks", "scenarios", "requirements"):
            lines.append(f"{name}: {getattr(self, name)}")
        return "\n".join(lines) + "\n"


def stats(model: StpaModel | IndexedModel) -> Stats:
    """Exact element counts, keyed in enumeration order."""
    idx = ensure_indexed(model)
    by_cat = {c.value: 0 for c in LossCategory}
    for loss in idx.iter_kind(IdKind.LOSS):
        by_cat[loss.category.value] += 1
    by_gw = {g.value: 0 for g in GUIDEWORDS}
    for uca in idx.iter_kind(IdKind.UCA):
        by_gw[uca.guideword.value] += 1
    return Stats(
        losses_by_category=by_cat,
        hazards=len(idx.by_kind[IdKind.HAZARD]),
        entities=len(idx.by_kind[IdKind.ENTITY]),
        actions=len(idx.by_kind[IdKind.ACTION]),
        feedbacks=len(idx.by_kind[IdKind.FEEDBACK]),
        loops=len(idx.by_kind[IdKind.LOOP]),
        ucas_by_guideword=by_gw,
        na_marks=len(idx.model.na_marks),
        scenarios=len(idx.by_kind[IdKind.SCENARIO]),
        requirements=len(idx.by_kind[IdKind.REQUIREMENT]),
    )
