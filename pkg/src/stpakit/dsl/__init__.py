"""The ``.stpa`` text format: tokenizer, parser and canonical formatter."""

from ..diagnostics import SourceSpan
from .formatter import format_model
from .lexer import Token, TokenKind, tokenize
from .parser import parse

__all__ = ["SourceSpan", "Token", "TokenKind", "format_model", "parse", "tokenize"]
