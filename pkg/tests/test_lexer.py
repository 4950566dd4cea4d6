from hypothesis import given

from stpakit.diagnostics import SourceSpan
from stpakit.dsl import TokenKind, tokenize
from stpakit.dsl.formatter import quote
from stpakit.dsl.lexer import lex

from modelgen import string_values


def kinds(text):
    return [t.kind for t in tokenize(text)[0]]


def test_declaration_tokens():
    toks, diags = tokenize('loss L1 "Patient Death"')
    assert diags == []
    assert [(t.kind, t.text) for t in toks] == [
        (TokenKind.KEYWORD, "loss"), (TokenKind.IDENT, "L1"),
        (TokenKind.STRING, "Patient Death"), (TokenKind.EOF, ""),
    ]


def test_spans_are_one_based_and_measure_raw_length():
    toks, _ = tokenize('hazard H3A "a\\"b"\n  leads_to')
    assert toks[0].span == SourceSpan(1, 1, 6)
    assert toks[1].span == SourceSpan(1, 8, 3)
    assert toks[2].span == SourceSpan(1, 12, 6)
    assert toks[4].span == SourceSpan(2, 3, 8)


def test_spans_are_ordered_and_disjoint():
    toks, _ = tokenize('model "x" {\n  purpose: "y";\n}\nloss L1 "a" { item: "b"; }\n')
    spans = [t.span for t in toks if t.kind is not TokenKind.EOF]
    for a, b in zip(spans, spans[1:]):
        assert (a.line, a.column + a.length) <= (b.line, b.column) or a.line < b.line


def test_escapes_decode():
    toks, diags = tokenize(r'"q\" b\\ n\n t\t r\r"')
    assert diags == []
    assert toks[0].text == 'q" b\\ n\n t\t r\r'


def test_unknown_escape_is_kept_verbatim():
    toks, _ = tokenize(r'"a\qb"')
    assert toks[0].text == "a\\qb"


def test_keywords_are_case_sensitive():
    assert kinds("loss Loss LOSS") == [TokenKind.KEYWORD, TokenKind.IDENT, TokenKind.IDENT,
                                        TokenKind.EOF]


def test_ids_may_contain_hyphens_but_not_start_with_them():
    toks, diags = tokenize("UCA2-4 -x")
    assert toks[0].text == "UCA2-4"
    assert [d.code for d in diags] == ["E002"]
    assert diags[0].span == SourceSpan(1, 8, 1)


def test_unterminated_string_reports_opening_quote():
    toks, diags = tokenize('loss L1 "open\nhazard H1 "x"')
    assert [d.code for d in diags] == ["E001"]
    assert diags[0].span.line == 1 and diags[0].span.column == 9
    # lexing carries on with the next line
    assert [t.text for t in toks if t.kind is TokenKind.KEYWORD] == ["loss", "hazard"]


def test_illegal_character_is_skipped():
    toks, diags = tokenize("loss @ L1")
    assert [d.code for d in diags] == ["E002"]
    assert [t.text for t in toks][:2] == ["loss", "L1"]


def test_comments_are_collected_not_tokenized():
    result = lex("# head\nloss L1 \"t\" # tail\n#\n")
    assert [(c.line, c.text, c.full_line) for c in result.comments] == [
        (1, "head", True), (2, "tail", False), (3, "", True)]
    assert TokenKind.STRING in [t.kind for t in result.tokens]


def test_crlf_and_bom_are_accepted():
    toks, diags = tokenize('﻿loss L1 "a"\r\nloss L2 "b"\r\n')
    assert diags == []
    assert toks[3].kind is TokenKind.NEWLINE
    assert toks[4].span == SourceSpan(2, 1, 4)


def test_newlines_are_tokens():
    assert kinds("a\nb") == [TokenKind.IDENT, TokenKind.NEWLINE, TokenKind.IDENT, TokenKind.EOF]


@given(string_values())
def test_quoted_strings_lex_back_to_their_value(value):
    toks, diags = tokenize(quote(value))
    assert diags == []
    assert toks[0].kind is TokenKind.STRING
    assert toks[0].text == value
