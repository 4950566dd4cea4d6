"""Canonical text rendering of a model.

Sections come out in a fixed kind order (model, losses, hazards, entities,
actions, feedbacks, loops, UCAs, N/A marks, scenarios, requirements), each
kind in declaration order, one blank line between top-level items and two
spaces of indentation inside blocks.  Full-line comments attached to a
declaration are written directly above it.
"""

from __future__ import annotations

from ..model import EntityKind, LossCategory, StpaModel

_ENTITY_KIND_WORDS = {
    EntityKind.CONTROLLER: "controller",
    EntityKind.CONTROLLED_PROCESS: "process",
    EntityKind.BOTH: "both",
    EntityKind.ENVIRONMENT: "environment",
}

_STRING_ESCAPES = str.maketrans({"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t", "\r": "\\r"})


def quote(text: str) -> str:
    return '"' + text.translate(_STRING_ESCAPES) + '"'


def id_list(ids) -> str:
    return "[" + ", ".join(ids) + "]"


def _comment_lines(comments) -> list[str]:
    return [f"# {c}" if c else "#" for c in comments]


def _decl(comments, head: str, props: list[str]) -> str:
    lines = _comment_lines(comments)
    if props:
        lines.append(head + " {")
        lines.extend("  " + p for p in props)
        lines.append("}")
    else:
        lines.append(head)
    return "\n".join(lines)


def format_model(model: StpaModel) -> str:
    """Render ``model`` as canonical ``.stpa`` text (LF line endings)."""
    blocks: list[str] = []

    header = _comment_lines(model.comments)
    if model.purpose:
        header += [f"model {quote(model.title)} {{", f"  purpose: {quote(model.purpose)};", "}"]
    else:
        header.append(f"model {quote(model.title)} {{}}")
    blocks.append("\n".join(header))

    for loss in model.losses:
        props = []
        if loss.category is not LossCategory.UNSPECIFIED:
            props.append(f"category: {loss.category.value};")
        if loss.external:
            props.append("external;")
        if loss.description:
            props.append(f"description: {quote(loss.description)};")
        props += [f"item: {quote(item)};" for item in loss.items]
        blocks.append(_decl(loss.comments, f"loss {loss.id} {quote(loss.title)}", props))

    for hz in model.hazards:
        props = []
        if hz.leads_to:
            props.append(f"leads_to: {id_list(hz.leads_to)};")
        if hz.parent is not None:
            props.append(f"parent: {hz.parent};")
        if hz.description:
            props.append(f"description: {quote(hz.description)};")
        blocks.append(_decl(hz.comments, f"hazard {hz.id} {quote(hz.title)}", props))

    for ent in model.entities:
        blocks.append(_decl(
            ent.comments,
            f"entity {ent.id} {quote(ent.name)} kind {_ENTITY_KIND_WORDS[ent.kind]}", []))

    for keyword, edges in (("action", model.actions), ("feedback", model.feedbacks)):
        for edge in edges:
            blocks.append(_decl(
                edge.comments,
                f"{keyword} {edge.id} {quote(edge.name)} from {edge.source} to {edge.target}", []))

    for loop in model.loops:
        props = [f"controller: {loop.controller};", f"process: {loop.process};"]
        if loop.actions:
            props.append(f"actions: {id_list(loop.actions)};")
        if loop.feedbacks:
            props.append(f"feedbacks: {id_list(loop.feedbacks)};")
        blocks.append(_decl(loop.comments, f"loop {loop.id} {quote(loop.name)}", props))

    for uca in model.ucas:
        props = []
        if uca.hazards:
            props.append(f"hazards: {id_list(uca.hazards)};")
        if uca.context:
            props.append(f"context: {quote(uca.context)};")
        if uca.rationale:
            props.append(f"rationale: {quote(uca.rationale)};")
        blocks.append(_decl(
            uca.comments, f"uca {uca.id} on {uca.action} guideword {uca.guideword.value}", props))

    for mark in model.na_marks:
        blocks.append(_decl(
            mark.comments,
            f"na on {mark.action} guideword {mark.guideword.value} {quote(mark.justification)}", []))

    for sc in model.scenarios:
        props = []
        if sc.ucas:
            props.append(f"ucas: {id_list(sc.ucas)};")
        if sc.narrative:
            props.append(f"narrative: {quote(sc.narrative)};")
        props += [f"causal_factor: {quote(cf)};" for cf in sc.causal_factors]
        blocks.append(_decl(sc.comments, f"scenario {sc.id}", props))

    for rq in model.requirements:
        props = []
        if rq.derived_from:
            props.append(f"derived_from: {id_list(rq.derived_from)};")
        if not rq.solution_neutral:
            props.append("solution_neutral: false;")
        blocks.append(_decl(rq.comments, f"requirement {rq.id} {quote(rq.text)}", props))

    if model.trailing_comments:
        blocks.append("\n".join(_comment_lines(model.trailing_comments)))
    return "\n\n".join(blocks) + "\n"
