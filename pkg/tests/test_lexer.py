from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from oopdiag.lexer import lex, lex_with_diagnostics

JAVA_BITS = st.sampled_from([
    "class", "A", " ", "\n", "{", "}", "(", ")", ";", "int", "x", "=", "1", "0x1F", "3.5e2", "'c'", "\"s\\\"t\"",
    "// note\n", "/* block */", "/* open", "\"open", "->", ">>>=", "::", "@Override", "\t", "é", "#", "`",
])


@given(st.lists(JAVA_BITS, max_size=60).map("".join))
@settings(max_examples=300)
def test_lexing_is_lossless_on_java_like_text(text):
    assert "".join(t.lexeme for t in lex(text)) == text


@given(st.text(max_size=200))
@settings(max_examples=300)
def test_lexing_is_lossless_on_any_text(text):
    tokens = lex(text)
    assert "".join(t.lexeme for t in tokens) == text
    offsets = [t.offset for t in tokens]
    assert offsets == sorted(offsets)


def test_token_kinds_and_positions():
    toks = [t for t in lex("int x = 42; // hi\nreturn x;") if not t.is_trivia]
    assert [(t.kind, t.lexeme) for t in toks[:5]] == [
        ("keyword", "int"), ("identifier", "x"), ("operator", "="), ("literal", "42"), ("punctuation", ";"),
    ]
    ret = next(t for t in toks if t.lexeme == "return")
    assert (ret.line, ret.col) == (2, 1)


def test_invalid_utf8_is_reported_not_fatal():
    tokens, diags = lex_with_diagnostics(b"class A { \xff }")
    assert any("UTF-8" in d.message for d in diags)
    assert any(t.lexeme == "class" for t in tokens)


def test_unterminated_comment_is_an_error_token():
    tokens, diags = lex_with_diagnostics("int a; /* never closed")
    assert tokens[-1].kind == "error"
    assert diags and diags[0].message == "unterminated comment"
