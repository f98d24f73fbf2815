"""Lossless tokenizer for the supported Java subset.

Every character of the input ends up in exactly one token, trivia included,
so ``"".join(t.lexeme for t in lex(src))`` reproduces the decoded source.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

KEYWORDS = frozenset("""
abstract assert boolean break byte case catch char class const continue default do
double else enum extends final finally float for goto if implements import instanceof
int interface long native new package private protected public return short static
strictfp super switch synchronized this throw throws transient try void volatile while
true false null var record yield
""".split())

# Contextual words that stay identifiers when used as names.
SOFT_KEYWORDS = frozenset({"var", "record", "yield"})

LITERAL_KEYWORDS = frozenset({"true", "false", "null"})

PUNCTUATION = frozenset({"(", ")", "{", "}", "[", "]", ";", ",", ".", "@", "...", "::"})

_OPERATORS = sorted(
    """>>>= <<= >>= >>> ... -> :: == != <= >= && || ++ -- += -= *= /= %= &= |= ^= << >>
    = > < ! ~ ? : + - * / & | ^ % ( ) { } [ ] ; , . @""".split(),
    key=len,
    reverse=True,
)

_TOKEN_RE = re.compile(
    r"""
    (?P<whitespace>[ \t\r\n\f]+)
  | (?P<line_comment>//[^\r\n]*)
  | (?P<block_comment>/\*.*?\*/)
  | (?P<open_comment>/\*)
  | (?P<text_block>\"\"\".*?\"\"\")
  | (?P<string>"(?:[^"\\\r\n]|\\.)*")
  | (?P<open_string>"(?:[^"\\\r\n]|\\.)*\\?)
  | (?P<char>'(?:[^'\\\r\n]|\\.)*')
  | (?P<open_char>'(?:[^'\\\r\n]|\\.)*\\?)
  | (?P<number>0[xX][0-9a-fA-F_]*[lL]?|0[bB][01_]*[lL]?
      |(?:\d[\d_]*\.?[\d_]*|\.\d[\d_]*)(?:[eE][+-]?\d+)?[fFdDlL]?)
  | (?P<word>[^\W\d]\w*|\$[\w$]*)
  | (?P<op>"""
    + "|".join(re.escape(op) for op in _OPERATORS)
    + r""")
    """,
    re.VERBOSE | re.DOTALL,
)


@dataclass(frozen=True)
class Token:
    kind: str  # identifier keyword literal punctuation operator comment whitespace error
    lexeme: str
    offset: int
    line: int
    col: int

    @property
    def end_line(self) -> int:
        return self.line + self.lexeme.count("\n")

    @property
    def is_trivia(self) -> bool:
        return self.kind in ("whitespace", "comment")


@dataclass(frozen=True)
class LexDiagnostic:
    severity: str
    message: str
    line: int
    col: int


def decode(source: bytes | str) -> tuple[str, list[LexDiagnostic]]:
    if isinstance(source, str):
        return source, []
    try:
        return source.decode("utf-8"), []
    except UnicodeDecodeError:
        text = source.decode("utf-8", errors="replace")
        return text, [LexDiagnostic("warning", "invalid UTF-8 sequences replaced", 1, 1)]


def lex(source: bytes | str) -> list[Token]:
    return lex_with_diagnostics(source)[0]


def lex_with_diagnostics(source: bytes | str) -> tuple[list[Token], list[LexDiagnostic]]:
    text, diags = decode(source)
    tokens: list[Token] = []
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            lexeme, kind = text[pos], "error"
            diags.append(LexDiagnostic("error", f"unexpected character {lexeme!r}", line, pos - line_start + 1))
        else:
            group = m.lastgroup
            lexeme = m.group()
            if group in ("line_comment", "block_comment"):
                kind = "comment"
            elif group == "open_comment":
                lexeme, kind = text[pos:], "error"
                diags.append(LexDiagnostic("error", "unterminated comment", line, pos - line_start + 1))
            elif group in ("open_string", "open_char"):
                kind = "error"
                diags.append(LexDiagnostic("error", "unterminated literal", line, pos - line_start + 1))
            elif group in ("text_block", "string", "char", "number"):
                kind = "literal"
            elif group == "word":
                if lexeme in LITERAL_KEYWORDS:
                    kind = "literal"
                elif lexeme in KEYWORDS and lexeme not in SOFT_KEYWORDS:
                    kind = "keyword"
                else:
                    kind = "identifier"
            elif group == "op":
                kind = "punctuation" if lexeme in PUNCTUATION else "operator"
            else:
                kind = "whitespace"
        tokens.append(Token(kind, lexeme, pos, line, pos - line_start + 1))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            line_start = pos + lexeme.rindex("\n") + 1
        pos += len(lexeme)
    return tokens, diags
