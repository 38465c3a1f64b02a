"""Tokens for the q-series expression language."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import DSLSyntaxError

NUMBER, IDENT, STRING, OP, EOF = "NUMBER", "IDENT", "STRING", "OP", "EOF"

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<number>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<op>\.\.|[-+*/^(),])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(source: str, line: int = 1, column: int = 1) -> list:
    """Split ``source``; ``line``/``column`` locate its first character."""
    out = []
    pos = 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise DSLSyntaxError(f"unexpected character {source[pos]!r}", line, column)
        text = m.group()
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token({"number": NUMBER, "ident": IDENT, "string": STRING, "op": OP}[kind], text, line, column))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            column = len(text) - text.rfind("\n")
        else:
            column += len(text)
        pos = m.end()
    out.append(Token(EOF, "", line, column))
    return out
