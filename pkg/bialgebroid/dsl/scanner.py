"""Tokenizer for structure files.

Keywords are ordinary identifiers; the parser decides from context whether
`rank`, `on` or `E` is a keyword or a name.
"""
from __future__ import annotations

import re
from collections import OrderedDict
from dataclasses import dataclass
from typing import Iterator

from bialgebroid.errors import DslSyntaxError

__all__ = ["Token", "Scanner", "tokenize"]


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


class Scanner:

    token_dict = OrderedDict(
        [
            ("NEWLINE", r"\n"),
            ("WHITESPACE", r"[ \t\r]+"),
            ("COMMENT", r"#[^\n]*"),
            ("NUMBER", r"[0-9]+"),
            ("IDENT", r"[A-Za-z_][A-Za-z0-9_]*"),
            ("ARROW", r"->"),
            ("LBRACE", r"\{"),
            ("RBRACE", r"\}"),
            ("LBRACK", r"\["),
            ("RBRACK", r"\]"),
            ("LPAREN", r"\("),
            ("RPAREN", r"\)"),
            ("COMMA", r","),
            ("SEMICOLON", r";"),
            ("COLON", r":"),
            ("EQUAL", r"="),
            ("PLUS", r"\+"),
            ("MINUS", r"-"),
            ("STAR", r"\*"),
            ("SLASH", r"/"),
            ("CARET", r"\^"),
        ]
    )
    regex = re.compile("|".join(f"(?P<{kind}>{pattern})" for kind, pattern in token_dict.items()))

    def __init__(self, text: str):
        self.text = text

    def __iter__(self) -> Iterator[Token]:
        line, line_start, position = 1, 0, 0
        while position < len(self.text):
            match = self.regex.match(self.text, position)
            column = position - line_start + 1
            if match is None:
                raise DslSyntaxError("unexpected character", line, column, self.text[position])
            kind = match.lastgroup
            position = match.end()
            if kind == "NEWLINE":
                line, line_start = line + 1, position
                continue
            if kind in ("WHITESPACE", "COMMENT"):
                continue
            yield Token(kind, match.group(), line, column)
        yield Token("EOF", "", line, position - line_start + 1)


def tokenize(text: str) -> list[Token]:
    return list(Scanner(text))
