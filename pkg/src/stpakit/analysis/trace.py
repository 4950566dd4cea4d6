"""Bidirectional traceability between requirements, UCAs, hazards and losses."""

from __future__ import annotations

from dataclasses import dataclass

from ..diagnostics import StpaError
from ..model import IdKind, IndexedModel, StpaModel
from .validate import ensure_indexed

# kinds a backward trace may start from, tried in this order
BACK_START_KINDS = (IdKind.REQUIREMENT, IdKind.SCENARIO, IdKind.UCA, IdKind.HAZARD, IdKind.LOSS)

Ref = tuple[IdKind, str]


@dataclass(frozen=True)
class TracePath:
    """A chain of references ending at a loss.

    ``chain`` runs from the starting element down to the loss and passes
    through every hazard on the refinement path whose losses are inherited.
    ``scenarios`` lists the loss scenarios attached to the chain's UCA.
    """

    chain: tuple[Ref, ...]
    scenarios: tuple[str, ...] = ()

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(i for _, i in self.chain)

    @property
    def loss(self) -> str:
        return self.chain[-1][1]

    def __contains__(self, ident: str) -> bool:
        return ident in self.ids

    def __str__(self) -> str:
        text = " -> ".join(self.ids)
        if self.scenarios:
            text += "  [scenarios: " + ", ".join(self.scenarios) + "]"
        return text


def resolve(idx: IndexedModel, ident: str, kinds=BACK_START_KINDS) -> IdKind:
    for kind in kinds:
        if ident in idx.by_kind[kind]:
            return kind
    names = "/".join(k.value for k in kinds)
    raise StpaError("E031", f"unknown {names} id {ident!r}")


def _hazard_paths(idx: IndexedModel, hazard: str) -> list[tuple[Ref, ...]]:
    hazards = idx.by_kind[IdKind.HAZARD]
    out = []
    chain: list[Ref] = []
    seen: set[str] = set()
    node = hazard
    while node is not None and node in hazards and node not in seen:
        seen.add(node)
        chain.append((IdKind.HAZARD, node))
        for loss in idx.order(IdKind.LOSS, hazards[node].leads_to):
            out.append(tuple(chain) + ((IdKind.LOSS, loss),))
        node = hazards[node].parent
    return out


def _uca_paths(idx: IndexedModel, uca: str) -> list[TracePath]:
    scenarios = idx.uca_to_scenarios.get(uca, ())
    paths = []
    for hz in idx.order(IdKind.HAZARD, idx.by_kind[IdKind.UCA][uca].hazards):
        for tail in _hazard_paths(idx, hz):
            paths.append(TracePath(((IdKind.UCA, uca),) + tail, scenarios))
    return paths


def trace_back(model: StpaModel | IndexedModel, ident: str,
               kind: IdKind | None = None) -> list[TracePath]:
    """Every complete chain from ``ident`` down to a loss.

    Layers are visited in declaration order.  A hazard contributes its own
    losses first, then those of each ancestor in turn.
    """
    idx = ensure_indexed(model)
    kind = resolve(idx, ident, (kind,) if kind else BACK_START_KINDS)
    head: Ref = (kind, ident)
    if kind is IdKind.LOSS:
        return [TracePath((head,))]
    if kind is IdKind.HAZARD:
        return [TracePath(p) for p in _hazard_paths(idx, ident)]
    if kind is IdKind.UCA:
        return _uca_paths(idx, ident)
    element = idx.get(kind, ident)
    ucas = element.ucas if kind is IdKind.SCENARIO else element.derived_from
    return [TracePath((head,) + p.chain, p.scenarios)
            for u in idx.order(IdKind.UCA, ucas) for p in _uca_paths(idx, u)]


@dataclass(frozen=True)
class ForwardTrace:
    loss: str
    hazards: tuple[str, ...]
    ucas: tuple[str, ...]
    scenarios: tuple[str, ...]
    requirements: tuple[str, ...]


def trace_forward(model: StpaModel | IndexedModel, loss_id: str) -> ForwardTrace:
    """Everything whose backward trace can reach ``loss_id``."""
    idx = ensure_indexed(model)
    resolve(idx, loss_id, (IdKind.LOSS,))
    reached: set[str] = set()
    stack = list(idx.loss_to_hazards[loss_id])
    while stack:
        hz = stack.pop()
        if hz in reached:
            continue
        reached.add(hz)
        # refinements inherit their parent's losses
        stack.extend(idx.hazard_children.get(hz, ()))
    ucas = {u for h in reached for u in idx.hazard_to_ucas.get(h, ())}
    scenarios = {s for u in ucas for s in idx.uca_to_scenarios.get(u, ())}
    requirements = {r for u in ucas for r in idx.uca_to_requirements.get(u, ())}
    return ForwardTrace(
        loss_id,
        tuple(idx.order(IdKind.HAZARD, reached)),
        tuple(idx.order(IdKind.UCA, ucas)),
        tuple(idx.order(IdKind.SCENARIO, scenarios)),
        tuple(idx.order(IdKind.REQUIREMENT, requirements)),
    )


def losses_reached(model: StpaModel | IndexedModel, ident: str,
                   kind: IdKind | None = None) -> tuple[str, ...]:
    """Distinct losses at the end of ``trace_back(ident)``, in declaration order."""
    idx = ensure_indexed(model)
    return tuple(idx.order(IdKind.LOSS, {p.loss for p in trace_back(idx, ident, kind)}))
