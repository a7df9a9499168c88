"""Tokenizer shared by the meaning-term, glue, lexicon, grammar and
f-structure readers."""

from __future__ import annotations

import re
from dataclasses import dataclass


class ParseError(ValueError):
    """Syntax error with a source position."""

    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.message = message
        self.pos = pos
        if pos is not None and text:
            line = text.count("\n", 0, pos) + 1
            col = pos - (text.rfind("\n", 0, pos) + 1) + 1
            self.line, self.col = line, col
            message = f"{message} (line {line}, column {col})"
        else:
            self.line = self.col = None
        super().__init__(message)


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    pos: int


# Order matters: multi-character operators before their prefixes.
_TOKEN_SPEC = [
    ("WS", r"[ \t\r\n]+"),
    ("COMMENT", r"#[^\n]*"),
    ("STRING", r"'[^'\n]*'|\"[^\"\n]*\""),
    ("LOLLI", r"-o(?![A-Za-z0-9_])|⊸"),
    ("ARROW", r"->|→"),
    ("TENSOR", r"\*|⊗"),
    ("LAMBDA", r"λ|\\"),
    ("FORALL", r"∀"),
    ("LEADSTO", r"~|↝"),
    ("UP", r"\^|↑"),
    ("DOWN", r"!|↓"),
    ("IDENT", r"[A-Za-z_][A-Za-z0-9_']*"),
    ("PUNCT", r"[()\[\]{},.:;=]"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{rx})" for name, rx in _TOKEN_SPEC))


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind not in ("WS", "COMMENT"):
            value = m.group()
            if kind == "PUNCT":
                kind = value
            tokens.append(Token(kind, value, pos))
        pos = m.end()
    tokens.append(Token("EOF", "", len(text)))
    return tokens


class TokenStream:
    """Cursor over a token list with one-token lookahead and backtracking."""

    def __init__(self, text: str, tokens: list[Token] | None = None):
        self.text = text
        self.tokens = tokenize(text) if tokens is None else tokens
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def peek_at(self, offset: int) -> Token:
        j = min(self.i + offset, len(self.tokens) - 1)
        return self.tokens[j]

    def at(self, kind: str, value: str | None = None) -> bool:
        tok = self.peek
        return tok.kind == kind and (value is None or tok.value == value)

    def at_keyword(self, word: str) -> bool:
        return self.at("IDENT", word)

    def next(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "EOF":
            self.i += 1
        return tok

    def accept(self, kind: str, value: str | None = None) -> Token | None:
        if self.at(kind, value):
            return self.next()
        return None

    def expect(self, kind: str, value: str | None = None, what: str | None = None) -> Token:
        if self.at(kind, value):
            return self.next()
        wanted = what or value or kind
        got = self.peek.value or "end of input"
        self.error(f"expected {wanted}, found {got!r}")

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.peek
        raise ParseError(message, self.text, tok.pos)

    def expect_end(self):
        if not self.at("EOF"):
            self.error(f"unexpected {self.peek.value!r}")
