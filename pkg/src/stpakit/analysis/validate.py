"""STPA well-formedness rules.

Findings are sorted by (code, kind, declaration position, guideword), so
identical models always produce identical listings.
"""

from __future__ import annotations

from ..diagnostics import Diagnostic, make
from ..model import (
    GUIDEWORDS, EntityKind, IdKind, IndexedModel, StpaModel, index_model,
)

_KIND_RANK = {kind: i for i, kind in enumerate(IdKind)}
_GW_RANK = {gw: i for i, gw in enumerate(GUIDEWORDS)}


def ensure_indexed(model: StpaModel | IndexedModel) -> IndexedModel:
    return model if isinstance(model, IndexedModel) else index_model(model)


class _Findings:
    def __init__(self, idx: IndexedModel) -> None:
        self.idx = idx
        self.items: list[tuple[tuple, Diagnostic]] = []

    def add(self, code: str, kind: IdKind, ident: str, message: str,
            related: tuple[str, ...] = (), sub: int = 0) -> None:
        pos = self.idx.position.get((kind, ident), -1)
        span = self.idx.model.span_of(kind, ident)
        key = (code, _KIND_RANK[kind], pos, sub)
        self.items.append((key, make(code, message, span, related or (ident,))))

    def sorted(self) -> list[Diagnostic]:
        return [d for _, d in sorted(self.items, key=lambda kv: kv[0])]


def reference_errors(idx: IndexedModel) -> list[Diagnostic]:
    out = _Findings(idx)
    for i, d in enumerate(idx.dangling):
        out.add("E020", d.source_kind, d.source,
                f"{d.source_kind.value} {d.source!r} references undeclared "
                f"{d.target_kind.value} {d.target!r} ({d.field})",
                related=(d.source, d.target), sub=i)
    return out.sorted()


def validate(model: StpaModel | IndexedModel) -> list[Diagnostic]:
    """Run every rule; returns only E020 findings if references dangle."""
    idx = ensure_indexed(model)
    if idx.dangling:
        return reference_errors(idx)
    out = _Findings(idx)
    _check_hazards(idx, out)
    _check_losses(idx, out)
    _check_structure(idx, out)
    _check_ucas(idx, out)
    _check_derivations(idx, out)
    _check_cells(idx, out)
    return out.sorted()


def _check_hazards(idx: IndexedModel, out: _Findings) -> None:
    hazards = idx.by_kind[IdKind.HAZARD]
    for hz in hazards.values():
        if not hz.title:
            out.add("W001", IdKind.HAZARD, hz.id, f"hazard {hz.id!r} has an empty title")
        if not hz.leads_to and hz.parent is None:
            out.add("R001", IdKind.HAZARD, hz.id,
                    f"hazard {hz.id!r} leads to no loss and refines no parent hazard")

    # parent links form a functional graph: each cycle is reported once,
    # named after its earliest-declared member
    reported: set[str] = set()
    for start in hazards:
        path: list[str] = []
        on_path: set[str] = set()
        node: str | None = start
        while node is not None and node not in on_path and node not in reported:
            path.append(node)
            on_path.add(node)
            node = hazards[node].parent
        if node is None or node in reported or node not in on_path:
            reported.update(path)
            continue
        cycle = path[path.index(node):]
        reported.update(path)
        first = min(cycle, key=lambda h: idx.position[(IdKind.HAZARD, h)])
        k = cycle.index(first)
        ordered = tuple(cycle[k:] + cycle[:k])
        out.add("R008", IdKind.HAZARD, first,
                "cycle in hazard refinement: " + " -> ".join(ordered + (first,)),
                related=ordered)


def _check_losses(idx: IndexedModel, out: _Findings) -> None:
    for loss in idx.by_kind[IdKind.LOSS].values():
        if not loss.title:
            out.add("W001", IdKind.LOSS, loss.id, f"loss {loss.id!r} has an empty title")
        if not idx.loss_to_hazards[loss.id] and not loss.external:
            out.add("R003", IdKind.LOSS, loss.id,
                    f"loss {loss.id!r} is not reached by any hazard (mark it 'external' "
                    "if it lies beyond the system boundary)")


def _check_structure(idx: IndexedModel, out: _Findings) -> None:
    entities = idx.by_kind[IdKind.ENTITY]

    def kind_of(eid: str) -> EntityKind:
        return entities[eid].kind

    for act in idx.by_kind[IdKind.ACTION].values():
        problems = []
        if not kind_of(act.source).can_control:
            problems.append(f"source {act.source!r} has kind {kind_of(act.source).value}")
        if not kind_of(act.target).can_be_controlled:
            problems.append(f"target {act.target!r} has kind {kind_of(act.target).value}")
        if problems:
            out.add("R004", IdKind.ACTION, act.id,
                    f"control action {act.id!r} runs against entity kinds: " + "; ".join(problems),
                    related=(act.id, act.source, act.target))

    for fb in idx.by_kind[IdKind.FEEDBACK].values():
        problems = []
        if kind_of(fb.source) is EntityKind.CONTROLLER:
            problems.append(f"source {fb.source!r} is a pure controller")
        if not kind_of(fb.target).can_control:
            problems.append(f"target {fb.target!r} has kind {kind_of(fb.target).value}")
        if problems:
            out.add("R004", IdKind.FEEDBACK, fb.id,
                    f"feedback {fb.id!r} runs against entity kinds: " + "; ".join(problems),
                    related=(fb.id, fb.source, fb.target))

    for loop in idx.by_kind[IdKind.LOOP].values():
        problems = []
        if not kind_of(loop.controller).can_control:
            problems.append(f"controller {loop.controller!r} has kind {kind_of(loop.controller).value}")
        if not kind_of(loop.process).can_be_controlled:
            problems.append(f"process {loop.process!r} has kind {kind_of(loop.process).value}")
        for aid in loop.actions:
            act = idx.by_kind[IdKind.ACTION][aid]
            if (act.source, act.target) != (loop.controller, loop.process):
                problems.append(f"action {aid!r} does not run {loop.controller} -> {loop.process}")
        for fid in loop.feedbacks:
            fb = idx.by_kind[IdKind.FEEDBACK][fid]
            if fb.target != loop.controller:
                problems.append(f"feedback {fid!r} does not return to {loop.controller}")
            elif fb.source != loop.process and kind_of(fb.source) is not EntityKind.ENVIRONMENT:
                problems.append(f"feedback {fid!r} does not come from {loop.process}")
        if problems:
            out.add("R004", IdKind.LOOP, loop.id,
                    f"control loop {loop.id!r} is inconsistent: " + "; ".join(problems))
        if not loop.actions:
            out.add("R011", IdKind.LOOP, loop.id, f"control loop {loop.id!r} has no control actions")
        if not loop.feedbacks:
            out.add("R009", IdKind.LOOP, loop.id,
                    f"control loop {loop.id!r} is open: no feedback is modelled")


def _check_ucas(idx: IndexedModel, out: _Findings) -> None:
    seen: dict[tuple, str] = {}
    for uca in idx.by_kind[IdKind.UCA].values():
        if not uca.hazards or uca.action not in idx.by_kind[IdKind.ACTION]:
            reason = "references no hazard" if not uca.hazards else f"targets missing action {uca.action!r}"
            out.add("R002", IdKind.UCA, uca.id, f"UCA {uca.id!r} {reason}")
        triple = (uca.action, uca.guideword, uca.context)
        if triple in seen:
            out.add("R010", IdKind.UCA, uca.id,
                    f"UCA {uca.id!r} repeats {seen[triple]!r} (same action, guideword and context)",
                    related=(uca.id, seen[triple]))
        else:
            seen[triple] = uca.id
        if not idx.uca_to_scenarios[uca.id]:
            out.add("R007", IdKind.UCA, uca.id, f"UCA {uca.id!r} is not examined by any loss scenario")


def _check_derivations(idx: IndexedModel, out: _Findings) -> None:
    for rq in idx.by_kind[IdKind.REQUIREMENT].values():
        if not rq.derived_from:
            out.add("R005", IdKind.REQUIREMENT, rq.id,
                    f"requirement {rq.id!r} is not derived from any UCA")
    for sc in idx.by_kind[IdKind.SCENARIO].values():
        if not sc.ucas:
            out.add("R005", IdKind.SCENARIO, sc.id, f"scenario {sc.id!r} references no UCA")


def _check_cells(idx: IndexedModel, out: _Findings) -> None:
    assessed = {(u.action, u.guideword) for u in idx.by_kind[IdKind.UCA].values()}
    marked: set[tuple] = set()
    for mark in idx.model.na_marks:
        cell = (mark.action, mark.guideword)
        sub = _GW_RANK[mark.guideword]
        if cell in assessed:
            out.add("R012", IdKind.ACTION, mark.action,
                    f"N/A mark on ({mark.action}, {mark.guideword.value}) conflicts with an "
                    "assessed UCA", sub=sub)
        elif cell in marked:
            out.add("R012", IdKind.ACTION, mark.action,
                    f"({mark.action}, {mark.guideword.value}) is marked N/A twice", sub=sub)
        marked.add(cell)

    covered = assessed | marked
    reported: set[tuple] = set()
    for loop in idx.by_kind[IdKind.LOOP].values():
        for aid in loop.actions:
            for gw in GUIDEWORDS:
                cell = (aid, gw)
                if cell in covered or cell in reported:
                    continue
                reported.add(cell)
                out.add("R006", IdKind.ACTION, aid,
                        f"cell ({aid}, {gw.value}) in loop {loop.id!r} is neither assessed nor "
                        "marked N/A", related=(aid, loop.id), sub=_GW_RANK[gw])
