"""Lossless JSON export and import (schema ``stpa-kit/1``)."""

from __future__ import annotations

import dataclasses
import json
from enum import Enum

from ..model import (
    ControlAction, ControlLoop, Entity, EntityKind, Feedback, Guideword, Hazard, Loss,
    LossCategory, LossScenario, NotApplicableMark, Requirement, StpaModel, UnsafeControlAction,
)

SCHEMA_VERSION = "stpa-kit/1"

# section name -> element class, in emission order
SECTIONS: dict[str, type] = {
    "losses": Loss,
    "hazards": Hazard,
    "entities": Entity,
    "actions": ControlAction,
    "feedbacks": Feedback,
    "loops": ControlLoop,
    "ucas": UnsafeControlAction,
    "na_marks": NotApplicableMark,
    "scenarios": LossScenario,
    "requirements": Requirement,
}

_ENUM_FIELDS: dict[tuple[type, str], type[Enum]] = {
    (Loss, "category"): LossCategory,
    (Entity, "kind"): EntityKind,
    (UnsafeControlAction, "guideword"): Guideword,
    (NotApplicableMark, "guideword"): Guideword,
}


def _to_json(value):
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, tuple):
        return [_to_json(v) for v in value]
    return value


def to_document(model: StpaModel) -> dict:
    doc: dict = {
        "version": SCHEMA_VERSION,
        "model": {
            "title": model.title,
            "purpose": model.purpose,
            "comments": list(model.comments),
            "trailing_comments": list(model.trailing_comments),
        },
    }
    for section in SECTIONS:
        doc[section] = [
            {f.name: _to_json(getattr(el, f.name)) for f in dataclasses.fields(el)}
            for el in getattr(model, section)
        ]
    return doc


def export_json(model: StpaModel) -> str:
    """Keys in fixed order, arrays in declaration order, two-space indent, trailing LF."""
    return json.dumps(to_document(model), indent=2, ensure_ascii=False) + "\n"


def _element(cls: type, raw: dict):
    kwargs = {}
    for f in dataclasses.fields(cls):
        if f.name not in raw:
            if f.default is dataclasses.MISSING and f.default_factory is dataclasses.MISSING:
                raise ValueError(f"{cls.__name__} entry lacks required field {f.name!r}")
            continue
        value = raw[f.name]
        enum_type = _ENUM_FIELDS.get((cls, f.name))
        if enum_type is not None:
            value = enum_type(value)
        elif isinstance(value, list):
            value = tuple(value)
        kwargs[f.name] = value
    return cls(**kwargs)


def from_document(doc: dict) -> StpaModel:
    version = doc.get("version")
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported document version {version!r} (expected {SCHEMA_VERSION})")
    header = doc.get("model", {})
    sections = {name: tuple(_element(cls, raw) for raw in doc.get(name, []))
                for name, cls in SECTIONS.items()}
    return StpaModel(
        title=header.get("title", ""),
        purpose=header.get("purpose", ""),
        comments=tuple(header.get("comments", ())),
        trailing_comments=tuple(header.get("trailing_comments", ())),
        **sections,
    )


def import_json(text: str) -> StpaModel:
    return from_document(json.loads(text))
