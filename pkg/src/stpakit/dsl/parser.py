"""Recursive-descent parser for ``.stpa`` files.

Grammar (one declaration per statement, keywords lowercase)::

    model "<title>" { purpose: "<text>"; }
    loss <ID> "<title>" { category: societal|individual; external; description: "…"; item: "…"; }
    hazard <ID> "<title>" { leads_to: [L1, L2]; parent: <ID>; description: "…"; }
    entity <ID> "<name>" kind controller|process|both|environment
    action <ID> "<name>" from <entity> to <entity>
    feedback <ID> "<name>" from <entity> to <entity>
    loop <ID> "<name>" { controller: <ID>; process: <ID>; actions: […]; feedbacks: […]; }
    uca <ID> on <action> guideword <word> { hazards: […]; context: "…"; rationale: "…"; }
    na on <action> guideword <word> "<justification>"
    scenario <ID> { ucas: […]; narrative: "…"; causal_factor: "…"; }
    requirement <ID> "<text>" { derived_from: […]; solution_neutral: false; }

Blocks are optional where every property is optional.  The parser never
stops at the first error: a bad property resynchronises at the next ``;``
or ``}``, a bad declaration at the next top-level keyword that starts a
line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..diagnostics import Diagnostic, SourceSpan, make
from ..model import (
    ControlAction, ControlLoop, Entity, EntityKind, Feedback, Guideword, Hazard,
    IdKind, Loss, LossCategory, LossScenario, NotApplicableMark, Requirement,
    StpaModel, UnsafeControlAction,
)
from .lexer import TOP_LEVEL_KEYWORDS, Comment, Token, TokenKind, lex

ENTITY_KIND_WORDS = {
    "controller": EntityKind.CONTROLLER,
    "process": EntityKind.CONTROLLED_PROCESS,
    "controlled_process": EntityKind.CONTROLLED_PROCESS,
    "both": EntityKind.BOTH,
    "environment": EntityKind.ENVIRONMENT,
}
CATEGORY_WORDS = {c.value: c for c in LossCategory}
GUIDEWORD_WORDS = {g.value: g for g in Guideword}
BOOL_WORDS = {"true": True, "false": False}


class _Abort(Exception):
    """Raised after a diagnostic has been recorded; triggers resynchronisation."""


@dataclass
class _Ref:
    kind: IdKind
    ident: str
    span: SourceSpan


@dataclass
class _State:
    header_seen: SourceSpan | None = None
    title: str = ""
    purpose: str = ""
    header_comments: tuple[str, ...] = ()
    items: dict[IdKind, list] = field(default_factory=lambda: {k: [] for k in IdKind})
    na_marks: list[NotApplicableMark] = field(default_factory=list)
    spans: dict[tuple[IdKind, str], SourceSpan] = field(default_factory=dict)
    refs: list[_Ref] = field(default_factory=list)


class Parser:
    def __init__(self, text: str) -> None:
        lexed = lex(text)
        self.diagnostics: list[Diagnostic] = list(lexed.diagnostics)
        self.tokens = [t for t in lexed.tokens if t.kind is not TokenKind.NEWLINE]
        self.comments: list[Comment] = [c for c in lexed.comments if c.full_line]
        self.pos = 0
        self.state = _State()
        self._comment_cursor = 0
        self._last_end_line = 0
        # first token on each line, used to find resynchronisation points
        self._line_starts: set[int] = set()
        seen: set[int] = set()
        for idx, tok in enumerate(self.tokens):
            if tok.span.line not in seen:
                seen.add(tok.span.line)
                self._line_starts.add(idx)

    # -- token helpers ------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind is not TokenKind.EOF:
            self.pos += 1
        return tok

    def at_punct(self, ch: str) -> bool:
        return self.tok.kind is TokenKind.PUNCT and self.tok.text == ch

    def error(self, code: str, message: str, span: SourceSpan | None = None, **kw) -> None:
        self.diagnostics.append(make(code, message, span or self.tok.span, **kw))

    def fail(self, expected: str) -> _Abort:
        tok = self.tok
        found = "end of file" if tok.kind is TokenKind.EOF else f"{tok.kind.value} {tok.text!r}"
        self.error("E012", f"expected {expected}, found {found}", tok.span)
        return _Abort()

    def expect_punct(self, ch: str) -> Token:
        if not self.at_punct(ch):
            raise self.fail(f"'{ch}'")
        return self.advance()

    def expect_keyword(self, word: str) -> Token:
        if self.tok.kind is TokenKind.KEYWORD and self.tok.text == word:
            return self.advance()
        raise self.fail(f"keyword '{word}'")

    def expect_ident(self, what: str = "identifier") -> Token:
        if self.tok.kind is TokenKind.IDENT:
            return self.advance()
        raise self.fail(what)

    def expect_string(self, what: str = "string") -> Token:
        if self.tok.kind is TokenKind.STRING:
            return self.advance()
        raise self.fail(what)

    def expect_enum(self, table: dict, what: str):
        tok = self.expect_ident(what)
        if tok.text not in table:
            choices = "|".join(table)
            self.error("E013", f"invalid {what} {tok.text!r} (expected {choices})", tok.span)
            raise _Abort()
        return table[tok.text]

    def at_sync_point(self) -> bool:
        tok = self.tok
        return tok.kind is TokenKind.EOF or (
            tok.kind is TokenKind.KEYWORD and tok.text in TOP_LEVEL_KEYWORDS
            and self.pos in self._line_starts)

    def synchronize(self) -> None:
        if not self.at_sync_point():
            self.advance()
        while not self.at_sync_point():
            self.advance()

    # -- comments -----------------------------------------------------------

    def take_comments(self, before_line: int) -> tuple[str, ...]:
        taken = []
        while (self._comment_cursor < len(self.comments)
               and self.comments[self._comment_cursor].line < before_line):
            c = self.comments[self._comment_cursor]
            if c.line > self._last_end_line:
                taken.append(c.text)
            self._comment_cursor += 1
        return tuple(taken)

    # -- top level ----------------------------------------------------------

    def parse(self) -> tuple[StpaModel, list[Diagnostic]]:
        handlers: dict[str, Callable[[tuple[str, ...]], None]] = {
            "model": self.parse_model,
            "loss": self.parse_loss,
            "hazard": self.parse_hazard,
            "entity": self.parse_entity,
            "action": lambda c: self.parse_edge(IdKind.ACTION, c),
            "feedback": lambda c: self.parse_edge(IdKind.FEEDBACK, c),
            "loop": self.parse_loop,
            "uca": self.parse_uca,
            "na": self.parse_na,
            "scenario": self.parse_scenario,
            "requirement": self.parse_requirement,
        }
        while self.tok.kind is not TokenKind.EOF:
            tok = self.tok
            start = self.pos
            try:
                if tok.kind is TokenKind.KEYWORD and tok.text in handlers:
                    comments = self.take_comments(tok.span.line)
                    handlers[tok.text](comments)
                elif tok.kind is TokenKind.IDENT:
                    self.error("E011", f"unknown keyword {tok.text!r}", tok.span)
                    raise _Abort()
                else:
                    raise self.fail("a declaration keyword")
            except _Abort:
                if self.pos == start or not self.at_sync_point():
                    self.synchronize()
            self._last_end_line = self.tokens[max(self.pos - 1, 0)].span.line
        trailing = self.take_comments(10**9)
        return self.finish(trailing)

    def finish(self, trailing: tuple[str, ...]) -> tuple[StpaModel, list[Diagnostic]]:
        st = self.state
        if st.header_seen is None:
            self.diagnostics.append(make(
                "E014", "missing model header (expected 'model \"<title>\"')",
                SourceSpan(1, 1, 0)))
        declared = {k: {e.id for e in st.items[k]} for k in IdKind}
        for ref in st.refs:
            if ref.ident not in declared[ref.kind]:
                self.diagnostics.append(make(
                    "E020", f"reference to undeclared {ref.kind.value} {ref.ident!r}",
                    ref.span, (ref.ident,)))
        model = StpaModel(
            title=st.title,
            purpose=st.purpose,
            losses=tuple(st.items[IdKind.LOSS]),
            hazards=tuple(st.items[IdKind.HAZARD]),
            entities=tuple(st.items[IdKind.ENTITY]),
            actions=tuple(st.items[IdKind.ACTION]),
            feedbacks=tuple(st.items[IdKind.FEEDBACK]),
            loops=tuple(st.items[IdKind.LOOP]),
            ucas=tuple(st.items[IdKind.UCA]),
            na_marks=tuple(st.na_marks),
            scenarios=tuple(st.items[IdKind.SCENARIO]),
            requirements=tuple(st.items[IdKind.REQUIREMENT]),
            comments=st.header_comments,
            trailing_comments=trailing,
            spans=dict(st.spans),
        )
        ordered = sorted(self.diagnostics,
                         key=lambda d: (d.span.line, d.span.column) if d.span else (0, 0))
        return model, ordered

    def declare(self, kind: IdKind, tok: Token, element) -> None:
        key = (kind, tok.text)
        first = self.state.spans.get(key)
        if first is not None:
            self.error("E010", f"duplicate {kind.value} id {tok.text!r}", tok.span,
                       related=(tok.text,), other_spans=(first,))
            return
        self.state.spans[key] = tok.span
        self.state.items[kind].append(element)

    def ref(self, kind: IdKind, tok: Token) -> str:
        self.state.refs.append(_Ref(kind, tok.text, tok.span))
        return tok.text

    def refs(self, kind: IdKind, toks: list[Token]) -> tuple[str, ...]:
        return tuple(self.ref(kind, t) for t in toks)

    # -- blocks -------------------------------------------------------------

    def parse_block(self, schema: dict[str, str]) -> dict[str, object]:
        """Parse an optional ``{ … }`` block.

        ``schema`` maps property names to one of ``string``, ``ident``,
        ``list``, ``flag``, or ``string*`` (repeatable string).
        """
        values: dict[str, object] = {}
        if not self.at_punct("{"):
            return values
        self.advance()
        while not self.at_punct("}"):
            if self.tok.kind is TokenKind.EOF or self.at_sync_point():
                raise self.fail("'}'")
            try:
                self.parse_property(schema, values)
            except _Abort:
                self.skip_property()
        self.advance()
        return values

    def skip_property(self) -> None:
        while not (self.at_punct(";") or self.at_punct("}") or self.at_sync_point()):
            self.advance()
        if self.at_punct(";"):
            self.advance()

    def parse_property(self, schema: dict[str, str], values: dict[str, object]) -> None:
        name = self.tok
        if name.kind not in (TokenKind.IDENT, TokenKind.KEYWORD):
            raise self.fail("a property name")
        self.advance()
        shape = schema.get(name.text)
        if shape is None:
            allowed = ", ".join(schema) or "none"
            self.error("E011", f"unknown property {name.text!r} (allowed: {allowed})", name.span)
            raise _Abort()
        if shape == "flag":
            if self.at_punct(":"):
                self.advance()
                value = BOOL_WORDS.get(self.tok.text) if self.tok.kind is TokenKind.IDENT else None
                if value is None:
                    raise self.fail("true or false")
                self.advance()
            else:
                value = True
        else:
            self.expect_punct(":")
            if shape in ("string", "string*"):
                value = self.expect_string().text
            elif shape == "ident":
                value = self.expect_ident()
            elif shape == "list":
                value = self.parse_id_list()
            else:  # pragma: no cover - schema typo
                raise AssertionError(shape)
        if shape == "string*":
            values.setdefault(name.text, []).append(value)  # type: ignore[union-attr]
        elif name.text in values:
            self.error("E012", f"property {name.text!r} given twice", name.span)
        else:
            values[name.text] = value
        if self.at_punct(";"):
            self.advance()
        elif not self.at_punct("}"):
            raise self.fail("';' or '}'")

    def parse_id_list(self) -> list[Token]:
        self.expect_punct("[")
        items: list[Token] = []
        while not self.at_punct("]"):
            items.append(self.expect_ident())
            if self.at_punct(","):
                self.advance()
            elif not self.at_punct("]"):
                raise self.fail("',' or ']'")
        self.advance()
        return items

    # -- declarations -------------------------------------------------------

    def parse_model(self, comments: tuple[str, ...]) -> None:
        kw = self.advance()
        title = self.expect_string("model title")
        values = self.parse_block({"purpose": "string"})
        st = self.state
        if st.header_seen is not None:
            self.error("E014", f"repeated model header (first at {st.header_seen})", kw.span,
                       other_spans=(st.header_seen,))
            return
        st.header_seen = kw.span
        st.title = title.text
        st.purpose = values.get("purpose", "")  # type: ignore[assignment]
        st.header_comments = comments

    def parse_loss(self, comments: tuple[str, ...]) -> None:
        self.advance()
        ident = self.expect_ident("loss id")
        title = self.expect_string("loss title")
        values = self.parse_block({
            "category": "ident", "external": "flag", "description": "string", "item": "string*",
        })
        category = LossCategory.UNSPECIFIED
        if "category" in values:
            tok = values["category"]
            assert isinstance(tok, Token)
            if tok.text not in CATEGORY_WORDS:
                self.error("E013", f"invalid loss category {tok.text!r} "
                           f"(expected {'|'.join(CATEGORY_WORDS)})", tok.span)
            else:
                category = CATEGORY_WORDS[tok.text]
        self.declare(IdKind.LOSS, ident, Loss(
            id=ident.text, title=title.text,
            description=values.get("description", ""),  # type: ignore[arg-type]
            category=category,
            items=tuple(values.get("item", ())),  # type: ignore[arg-type]
            external=bool(values.get("external", False)),
            comments=comments,
        ))

    def parse_hazard(self, comments: tuple[str, ...]) -> None:
        self.advance()
        ident = self.expect_ident("hazard id")
        title = self.expect_string("hazard title")
        values = self.parse_block({"leads_to": "list", "parent": "ident", "description": "string"})
        parent = values.get("parent")
        self.declare(IdKind.HAZARD, ident, Hazard(
            id=ident.text, title=title.text,
            description=values.get("description", ""),  # type: ignore[arg-type]
            leads_to=self.refs(IdKind.LOSS, values.get("leads_to", [])),  # type: ignore[arg-type]
            parent=self.ref(IdKind.HAZARD, parent) if isinstance(parent, Token) else None,
            comments=comments,
        ))

    def parse_entity(self, comments: tuple[str, ...]) -> None:
        self.advance()
        ident = self.expect_ident("entity id")
        name = self.expect_string("entity name")
        self.expect_keyword("kind")
        kind = self.expect_enum(ENTITY_KIND_WORDS, "entity kind")
        self.declare(IdKind.ENTITY, ident, Entity(ident.text, name.text, kind, comments))

    def parse_edge(self, kind: IdKind, comments: tuple[str, ...]) -> None:
        self.advance()
        ident = self.expect_ident(f"{kind.value} id")
        name = self.expect_string(f"{kind.value} name")
        self.expect_keyword("from")
        source = self.expect_ident("entity id")
        self.expect_keyword("to")
        target = self.expect_ident("entity id")
        cls = ControlAction if kind is IdKind.ACTION else Feedback
        self.declare(kind, ident, cls(
            ident.text, name.text, self.ref(IdKind.ENTITY, source),
            self.ref(IdKind.ENTITY, target), comments))

    def parse_loop(self, comments: tuple[str, ...]) -> None:
        self.advance()
        ident = self.expect_ident("loop id")
        name = self.expect_string("loop name")
        values = self.parse_block({
            "controller": "ident", "process": "ident", "actions": "list", "feedbacks": "list",
        })
        missing = [p for p in ("controller", "process") if p not in values]
        if missing:
            self.error("E012", f"loop {ident.text!r} is missing {' and '.join(missing)}", ident.span)
            return
        self.declare(IdKind.LOOP, ident, ControlLoop(
            id=ident.text, name=name.text,
            controller=self.ref(IdKind.ENTITY, values["controller"]),  # type: ignore[arg-type]
            process=self.ref(IdKind.ENTITY, values["process"]),  # type: ignore[arg-type]
            actions=self.refs(IdKind.ACTION, values.get("actions", [])),  # type: ignore[arg-type]
            feedbacks=self.refs(IdKind.FEEDBACK, values.get("feedbacks", [])),  # type: ignore[arg-type]
            comments=comments,
        ))

    def parse_cell_target(self) -> tuple[Token, Guideword]:
        self.expect_keyword("on")
        action = self.expect_ident("action id")
        self.expect_keyword("guideword")
        guideword = self.expect_enum(GUIDEWORD_WORDS, "guideword")
        return action, guideword

    def parse_uca(self, comments: tuple[str, ...]) -> None:
        self.advance()
        ident = self.expect_ident("uca id")
        action, guideword = self.parse_cell_target()
        values = self.parse_block({"hazards": "list", "context": "string", "rationale": "string"})
        self.declare(IdKind.UCA, ident, UnsafeControlAction(
            id=ident.text,
            action=self.ref(IdKind.ACTION, action),
            guideword=guideword,
            hazards=self.refs(IdKind.HAZARD, values.get("hazards", [])),  # type: ignore[arg-type]
            context=values.get("context", ""),  # type: ignore[arg-type]
            rationale=values.get("rationale", ""),  # type: ignore[arg-type]
            comments=comments,
        ))

    def parse_na(self, comments: tuple[str, ...]) -> None:
        self.advance()
        action, guideword = self.parse_cell_target()
        justification = self.expect_string("justification")
        self.state.na_marks.append(NotApplicableMark(
            self.ref(IdKind.ACTION, action), guideword, justification.text, comments))

    def parse_scenario(self, comments: tuple[str, ...]) -> None:
        self.advance()
        ident = self.expect_ident("scenario id")
        values = self.parse_block({"ucas": "list", "narrative": "string", "causal_factor": "string*"})
        self.declare(IdKind.SCENARIO, ident, LossScenario(
            id=ident.text,
            ucas=self.refs(IdKind.UCA, values.get("ucas", [])),  # type: ignore[arg-type]
            narrative=values.get("narrative", ""),  # type: ignore[arg-type]
            causal_factors=tuple(values.get("causal_factor", ())),  # type: ignore[arg-type]
            comments=comments,
        ))

    def parse_requirement(self, comments: tuple[str, ...]) -> None:
        self.advance()
        ident = self.expect_ident("requirement id")
        text = self.expect_string("requirement text")
        values = self.parse_block({"derived_from": "list", "solution_neutral": "flag"})
        self.declare(IdKind.REQUIREMENT, ident, Requirement(
            id=ident.text, text=text.text,
            derived_from=self.refs(IdKind.UCA, values.get("derived_from", [])),  # type: ignore[arg-type]
            solution_neutral=bool(values.get("solution_neutral", True)),
            comments=comments,
        ))


def parse(text: str) -> tuple[StpaModel, list[Diagnostic]]:
    """Parse ``.stpa`` source into a model plus every diagnostic found.

    On errors the model is a best-effort partial result: declarations that
    failed to parse and duplicate ids are left out.
    """
    return Parser(text).parse()
