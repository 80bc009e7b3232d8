"""Tokenizer shared by the formula, term and theory parsers."""

from __future__ import annotations

import re
from dataclasses import dataclass


class ParseError(ValueError):
    """Raised on malformed input; carries the offending character offset."""

    def __init__(self, message: str, pos: int | None = None, text: str | None = None):
        self.pos = pos
        self.text = text
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


@dataclass(frozen=True)
class Token:
    kind: str  # 'ident', 'op' or 'eof'
    value: str
    pos: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*'?)
  | (?P<op>-o|->|[()*.:=])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class TokenStream:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def at(self, value: str) -> bool:
        tok = self.peek
        return tok.kind != "eof" and tok.value == value

    def next(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def expect(self, value: str) -> Token:
        tok = self.peek
        if tok.value != value or tok.kind == "eof":
            self.error(f"expected {value!r}")
        return self.next()

    def expect_ident(self) -> Token:
        tok = self.peek
        if tok.kind != "ident":
            self.error("expected identifier")
        return self.next()

    def expect_eof(self) -> None:
        if self.peek.kind != "eof":
            self.error("unexpected trailing input")

    def error(self, message: str):
        tok = self.peek
        found = "end of input" if tok.kind == "eof" else repr(tok.value)
        raise ParseError(f"{message}, found {found}", tok.pos, self.text)
