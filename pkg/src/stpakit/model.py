"""Typed semantic model of an STPA analysis and its reference indexes.

All model values are frozen dataclasses holding tuples, so a parsed model
can be shared freely.  Collections keep declaration order; nothing in the
toolkit sorts by identifier text.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Mapping, NamedTuple, Union

from .diagnostics import SourceSpan


class IdKind(str, Enum):
    LOSS = "loss"
    HAZARD = "hazard"
    ENTITY = "entity"
    ACTION = "action"
    FEEDBACK = "feedback"
    LOOP = "loop"
    UCA = "uca"
    SCENARIO = "scenario"
    REQUIREMENT = "requirement"


class LossCategory(str, Enum):
    SOCIETAL = "societal"
    INDIVIDUAL = "individual"
    UNSPECIFIED = "unspecified"


class EntityKind(str, Enum):
    CONTROLLER = "controller"
    CONTROLLED_PROCESS = "controlled_process"
    BOTH = "both"
    ENVIRONMENT = "environment"

    @property
    def can_control(self) -> bool:
        return self in (EntityKind.CONTROLLER, EntityKind.BOTH)

    @property
    def can_be_controlled(self) -> bool:
        return self in (EntityKind.CONTROLLED_PROCESS, EntityKind.BOTH)


class Guideword(str, Enum):
    """The five table columns used for UCA assessment."""

    NOT_PROVIDING = "not_providing"
    PROVIDING = "providing"
    WRONG_TIMING = "wrong_timing"
    TOO_LOW = "too_low"
    TOO_HIGH = "too_high"

    @property
    def label(self) -> str:
        return _GUIDEWORD_LABELS[self]

    @property
    def rubric_group(self) -> str:
        """Four-way rubric view: too low and too high merge into one degree class."""
        if self in (Guideword.TOO_LOW, Guideword.TOO_HIGH):
            return "wrong_degree"
        return self.value


_GUIDEWORD_LABELS = {
    Guideword.NOT_PROVIDING: "Not Providing",
    Guideword.PROVIDING: "Providing",
    Guideword.WRONG_TIMING: "Wrong Timing",
    Guideword.TOO_LOW: "Too Low",
    Guideword.TOO_HIGH: "Too High",
}

GUIDEWORDS: tuple[Guideword, ...] = tuple(Guideword)


@dataclass(frozen=True)
class Loss:
    id: str
    title: str
    description: str = ""
    category: LossCategory = LossCategory.UNSPECIFIED
    items: tuple[str, ...] = ()
    external: bool = False
    comments: tuple[str, ...] = ()


@dataclass(frozen=True)
class Hazard:
    id: str
    title: str
    description: str = ""
    leads_to: tuple[str, ...] = ()
    parent: str | None = None
    comments: tuple[str, ...] = ()


@dataclass(frozen=True)
class Entity:
    id: str
    name: str
    kind: EntityKind
    comments: tuple[str, ...] = ()


@dataclass(frozen=True)
class ControlAction:
    id: str
    name: str
    source: str
    target: str
    comments: tuple[str, ...] = ()


@dataclass(frozen=True)
class Feedback:
    id: str
    name: str
    source: str
    target: str
    comments: tuple[str, ...] = ()


@dataclass(frozen=True)
class ControlLoop:
    id: str
    name: str
    controller: str
    process: str
    actions: tuple[str, ...] = ()
    feedbacks: tuple[str, ...] = ()
    comments: tuple[str, ...] = ()


@dataclass(frozen=True)
class UnsafeControlAction:
    id: str
    action: str
    guideword: Guideword
    hazards: tuple[str, ...] = ()
    context: str = ""
    rationale: str = ""
    comments: tuple[str, ...] = ()


@dataclass(frozen=True)
class NotApplicableMark:
    action: str
    guideword: Guideword
    justification: str = ""
    comments: tuple[str, ...] = ()


@dataclass(frozen=True)
class LossScenario:
    id: str
    ucas: tuple[str, ...] = ()
    narrative: str = ""
    causal_factors: tuple[str, ...] = ()
    comments: tuple[str, ...] = ()


@dataclass(frozen=True)
class Requirement:
    id: str
    text: str
    derived_from: tuple[str, ...] = ()
    solution_neutral: bool = True
    comments: tuple[str, ...] = ()


Element = Union[Loss, Hazard, Entity, ControlAction, Feedback, ControlLoop,
                UnsafeControlAction, LossScenario, Requirement]

# model attribute holding each identified kind, in canonical section order
KIND_FIELDS: dict[IdKind, str] = {
    IdKind.LOSS: "losses",
    IdKind.HAZARD: "hazards",
    IdKind.ENTITY: "entities",
    IdKind.ACTION: "actions",
    IdKind.FEEDBACK: "feedbacks",
    IdKind.LOOP: "loops",
    IdKind.UCA: "ucas",
    IdKind.SCENARIO: "scenarios",
    IdKind.REQUIREMENT: "requirements",
}


@dataclass(frozen=True)
class StpaModel:
    title: str = ""
    purpose: str = ""
    losses: tuple[Loss, ...] = ()
    hazards: tuple[Hazard, ...] = ()
    entities: tuple[Entity, ...] = ()
    actions: tuple[ControlAction, ...] = ()
    feedbacks: tuple[Feedback, ...] = ()
    loops: tuple[ControlLoop, ...] = ()
    ucas: tuple[UnsafeControlAction, ...] = ()
    na_marks: tuple[NotApplicableMark, ...] = ()
    scenarios: tuple[LossScenario, ...] = ()
    requirements: tuple[Requirement, ...] = ()
    comments: tuple[str, ...] = ()
    trailing_comments: tuple[str, ...] = ()
    # declaration spans keyed by (kind, id); filled by the parser, ignored by ==
    spans: Mapping[tuple[IdKind, str], SourceSpan] = field(
        default_factory=dict, compare=False, hash=False, repr=False)

    def collection(self, kind: IdKind) -> tuple:
        return getattr(self, KIND_FIELDS[kind])

    @property
    def declaration_order(self) -> dict[IdKind, tuple[str, ...]]:
        return {kind: tuple(e.id for e in self.collection(kind)) for kind in IdKind}

    def span_of(self, kind: IdKind, ident: str) -> SourceSpan | None:
        return self.spans.get((kind, ident))


class Dangling(NamedTuple):
    """A reference from ``source`` to an id of ``target_kind`` that does not exist."""

    source: str
    target: str
    source_kind: IdKind
    target_kind: IdKind
    field: str


class IndexedModel:
    """A model plus id lookup tables and reference adjacency.

    Adjacency maps contain an entry for every declared id of the source
    kind (possibly empty) and list referrers in declaration order.
    """

    def __init__(self, model: StpaModel) -> None:
        self.model = model
        self.by_kind: dict[IdKind, dict[str, Element]] = {}
        self.position: dict[tuple[IdKind, str], int] = {}
        for kind in IdKind:
            table: dict[str, Element] = {}
            for element in model.collection(kind):
                if element.id not in table:
                    table[element.id] = element
                    self.position[(kind, element.id)] = len(table) - 1
            self.by_kind[kind] = table

        self.loss_to_hazards: dict[str, tuple[str, ...]] = {}
        self.hazard_children: dict[str, tuple[str, ...]] = {}
        self.hazard_to_ucas: dict[str, tuple[str, ...]] = {}
        self.action_to_ucas: dict[str, tuple[str, ...]] = {}
        self.uca_to_scenarios: dict[str, tuple[str, ...]] = {}
        self.uca_to_requirements: dict[str, tuple[str, ...]] = {}
        self.action_to_loops: dict[str, tuple[str, ...]] = {}
        self.dangling: list[Dangling] = []
        self._build()

    # -- construction -----------------------------------------------------

    def _ref(self, source_kind: IdKind, source: str, target_kind: IdKind,
             target: str | None, field_name: str) -> bool:
        if target is None:
            return False
        if target in self.by_kind[target_kind]:
            return True
        self.dangling.append(Dangling(source, target, source_kind, target_kind, field_name))
        return False

    def _build(self) -> None:
        acc: dict[str, dict[str, list[str]]] = {
            name: {} for name in ("loss", "child", "hazard", "action", "scen", "req", "loop")
        }

        def add(table: str, key: str, value: str) -> None:
            bucket = acc[table].setdefault(key, [])
            if value not in bucket:
                bucket.append(value)

        m = self.model
        for hz in self.by_kind[IdKind.HAZARD].values():
            for loss in hz.leads_to:
                if self._ref(IdKind.HAZARD, hz.id, IdKind.LOSS, loss, "leads_to"):
                    add("loss", loss, hz.id)
            if self._ref(IdKind.HAZARD, hz.id, IdKind.HAZARD, hz.parent, "parent"):
                add("child", hz.parent, hz.id)
        for kind in (IdKind.ACTION, IdKind.FEEDBACK):
            for edge in self.by_kind[kind].values():
                self._ref(kind, edge.id, IdKind.ENTITY, edge.source, "from")
                self._ref(kind, edge.id, IdKind.ENTITY, edge.target, "to")
        for loop in self.by_kind[IdKind.LOOP].values():
            self._ref(IdKind.LOOP, loop.id, IdKind.ENTITY, loop.controller, "controller")
            self._ref(IdKind.LOOP, loop.id, IdKind.ENTITY, loop.process, "process")
            for a in loop.actions:
                if self._ref(IdKind.LOOP, loop.id, IdKind.ACTION, a, "actions"):
                    add("loop", a, loop.id)
            for f in loop.feedbacks:
                self._ref(IdKind.LOOP, loop.id, IdKind.FEEDBACK, f, "feedbacks")
        for uca in self.by_kind[IdKind.UCA].values():
            if self._ref(IdKind.UCA, uca.id, IdKind.ACTION, uca.action, "on"):
                add("action", uca.action, uca.id)
            for h in uca.hazards:
                if self._ref(IdKind.UCA, uca.id, IdKind.HAZARD, h, "hazards"):
                    add("hazard", h, uca.id)
        for mark in m.na_marks:
            # N/A marks have no id of their own
            self._ref(IdKind.ACTION, "na", IdKind.ACTION, mark.action, "na")
        for sc in self.by_kind[IdKind.SCENARIO].values():
            for u in sc.ucas:
                if self._ref(IdKind.SCENARIO, sc.id, IdKind.UCA, u, "ucas"):
                    add("scen", u, sc.id)
        for rq in self.by_kind[IdKind.REQUIREMENT].values():
            for u in rq.derived_from:
                if self._ref(IdKind.REQUIREMENT, rq.id, IdKind.UCA, u, "derived_from"):
                    add("req", u, rq.id)

        def freeze(table: str, keys) -> dict[str, tuple[str, ...]]:
            return {k: tuple(acc[table].get(k, ())) for k in keys}

        self.loss_to_hazards = freeze("loss", self.by_kind[IdKind.LOSS])
        self.hazard_children = freeze("child", self.by_kind[IdKind.HAZARD])
        self.hazard_to_ucas = freeze("hazard", self.by_kind[IdKind.HAZARD])
        self.action_to_ucas = freeze("action", self.by_kind[IdKind.ACTION])
        self.action_to_loops = freeze("loop", self.by_kind[IdKind.ACTION])
        self.uca_to_scenarios = freeze("scen", self.by_kind[IdKind.UCA])
        self.uca_to_requirements = freeze("req", self.by_kind[IdKind.UCA])

    # -- queries ----------------------------------------------------------

    def get(self, kind: IdKind, ident: str) -> Element | None:
        return self.by_kind[kind].get(ident)

    def __contains__(self, key: tuple[IdKind, str]) -> bool:
        kind, ident = key
        return ident in self.by_kind[kind]

    def kinds_of(self, ident: str) -> list[IdKind]:
        """Every kind under which ``ident`` is declared (ids are unique per kind only)."""
        return [k for k in IdKind if ident in self.by_kind[k]]

    def order(self, kind: IdKind, ids) -> list[str]:
        """``ids`` restricted to declared ones, deduplicated, in declaration order."""
        known = {i for i in ids if (kind, i) in self.position}
        return sorted(known, key=lambda i: self.position[(kind, i)])

    def iter_kind(self, kind: IdKind) -> Iterator[Element]:
        return iter(self.by_kind[kind].values())

    def __len__(self) -> int:
        return sum(len(t) for t in self.by_kind.values())


def index_model(model: StpaModel) -> IndexedModel:
    """Build lookup tables and adjacency for ``model``; dangling refs are collected."""
    return IndexedModel(model)
