"""Tokenizer for ``.stpa`` files."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from ..diagnostics import Diagnostic, SourceSpan, make

TOP_LEVEL_KEYWORDS = frozenset({
    "model", "loss", "hazard", "entity", "action", "feedback", "loop",
    "uca", "na", "scenario", "requirement",
})
KEYWORDS = TOP_LEVEL_KEYWORDS | {"kind", "from", "to", "on", "guideword"}

PUNCTUATION = frozenset("{}[]:;,")

_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", '"': '"', "\\": "\\"}


class TokenKind(str, Enum):
    KEYWORD = "keyword"
    IDENT = "ident"
    STRING = "string"
    PUNCT = "punct"
    NEWLINE = "newline"
    EOF = "eof"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str  # decoded value for strings, raw text otherwise
    span: SourceSpan

    def __repr__(self) -> str:
        return f"{self.kind.value}({self.text!r}@{self.span})"


@dataclass(frozen=True)
class Comment:
    line: int
    text: str
    full_line: bool  # nothing but whitespace precedes the '#'


@dataclass
class LexResult:
    tokens: list[Token] = field(default_factory=list)
    comments: list[Comment] = field(default_factory=list)
    diagnostics: list[Diagnostic] = field(default_factory=list)


def is_ident_char(ch: str) -> bool:
    return ch.isascii() and (ch.isalnum() or ch in "_-")


def is_ident_start(ch: str) -> bool:
    return ch.isascii() and (ch.isalnum() or ch == "_")


def comment_text(raw: str) -> str:
    """Text of a comment after the '#', minus one separating space."""
    body = raw[1:].rstrip()
    return body[1:] if body.startswith(" ") else body


def lex(text: str) -> LexResult:
    """Tokenize ``text``, collecting comments and lexical diagnostics.

    Lexing never stops early: an unterminated string ends at the line end
    (E001) and an illegal character is skipped (E002).
    """
    out = LexResult()
    if text.startswith("\ufeff"):
        text = text[1:]
    i, n = 0, len(text)
    line, col = 1, 1
    line_has_token = False

    def emit(kind: TokenKind, value: str, length: int) -> None:
        out.tokens.append(Token(kind, value, SourceSpan(line, col, length)))

    while i < n:
        ch = text[i]
        if ch == "\n" or (ch == "\r" and i + 1 < n and text[i + 1] == "\n"):
            width = 1 if ch == "\n" else 2
            emit(TokenKind.NEWLINE, "\n", width)
            i += width
            line, col = line + 1, 1
            line_has_token = False
            continue
        if ch in " \t\r\f\v":
            i += 1
            col += 1
            continue
        if ch == "#":
            j = text.find("\n", i)
            j = n if j < 0 else j
            raw = text[i:j].rstrip("\r")
            out.comments.append(Comment(line, comment_text(raw), not line_has_token))
            col += j - i
            i = j
            continue
        line_has_token = True
        if ch in PUNCTUATION:
            emit(TokenKind.PUNCT, ch, 1)
            i += 1
            col += 1
            continue
        if ch == '"':
            j = i + 1
            chars: list[str] = []
            closed = False
            while j < n and text[j] != "\n":
                c = text[j]
                if c == '"':
                    closed = True
                    break
                if c == "\\" and j + 1 < n and text[j + 1] != "\n":
                    nxt = text[j + 1]
                    chars.append(_ESCAPES.get(nxt, "\\" + nxt))
                    j += 2
                    continue
                chars.append(c)
                j += 1
            if closed:
                length = j + 1 - i
                emit(TokenKind.STRING, "".join(chars), length)
                col += length
                i = j + 1
            else:
                end = j
                if end > i and text[end - 1] == "\r":
                    end -= 1
                out.diagnostics.append(make(
                    "E001", "unterminated string literal", SourceSpan(line, col, end - i)))
                emit(TokenKind.STRING, "".join(chars).rstrip("\r"), end - i)
                col += j - i
                i = j
            continue
        if is_ident_start(ch):
            j = i + 1
            while j < n and is_ident_char(text[j]):
                j += 1
            word = text[i:j]
            kind = TokenKind.KEYWORD if word in KEYWORDS else TokenKind.IDENT
            emit(kind, word, j - i)
            col += j - i
            i = j
            continue
        out.diagnostics.append(make(
            "E002", f"illegal character {ch!r}", SourceSpan(line, col, 1)))
        i += 1
        col += 1

    out.tokens.append(Token(TokenKind.EOF, "", SourceSpan(line, col, 0)))
    return out


def tokenize(text: str) -> tuple[list[Token], list[Diagnostic]]:
    """Return the token stream (newlines included, comments dropped) and lex diagnostics."""
    result = lex(text)
    return result.tokens, result.diagnostics
