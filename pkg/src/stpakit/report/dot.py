"""Graphviz DOT export of the control structure.

Layout is left to the DOT consumer.  Output has exactly one line per
entity node and one line per edge so it can be checked with a line count.
"""

from __future__ import annotations

from ..model import EntityKind, StpaModel

_SHAPES = {
    EntityKind.CONTROLLER: 'shape=box',
    EntityKind.BOTH: 'shape=box, style=rounded',
    EntityKind.CONTROLLED_PROCESS: 'shape=ellipse',
    EntityKind.ENVIRONMENT: 'shape=note',
}


def dot_quote(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return f'"{escaped}"'


def export_dot(model: StpaModel) -> str:
    """Entities become nodes; control actions solid edges, feedback dashed edges."""
    lines = [f"digraph {dot_quote(model.title or 'stpa')} {{", "  rankdir=TB;"]
    for ent in model.entities:
        lines.append(f"  {dot_quote(ent.id)} [label={dot_quote(ent.name)}, {_SHAPES[ent.kind]}];")
    for act in model.actions:
        lines.append(f"  {dot_quote(act.source)} -> {dot_quote(act.target)} "
                     f"[label={dot_quote(act.name)}, style=solid];")
    for fb in model.feedbacks:
        lines.append(f"  {dot_quote(fb.source)} -> {dot_quote(fb.target)} "
                     f"[label={dot_quote(fb.name)}, style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
