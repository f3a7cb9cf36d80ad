"""Solidity tokenizer: verbatim tokens with 1-based line/column positions.

Total for any input string; unknown characters become `unknown` tokens and
concatenating token texts plus the skipped whitespace reproduces the input.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .._scan_defs import K_COMMENT, K_IDENT, K_NUMBER, K_PUNCT, K_STRING, K_UNKNOWN
from ..scanloop import scan_solidity

KEYWORDS = frozenset("""
    abstract address assembly bool break bytes byte calldata catch constant
    constructor continue contract delete do else emit enum error event
    external fallback false fixed for function if immutable import indexed
    int interface internal is library mapping memory modifier new override
    payable pragma private public pure receive return returns revert storage
    string struct true try type ufixed uint unchecked using view virtual
    while
""".split())

_SIZED_TYPE = re.compile(r"(?:u?int\d+|bytes\d+)\Z")

_KIND_NAME = {
    K_IDENT: "identifier",
    K_PUNCT: "punctuation",
    K_STRING: "string-literal",
    K_NUMBER: "number-literal",
    K_COMMENT: "comment",
    K_UNKNOWN: "unknown",
}


class Token(NamedTuple):
    kind: str  # keyword | identifier | punctuation | string-literal | number-literal | comment | unknown
    text: str
    line: int
    column: int
    start: int
    end: int


def _newline_positions(source: str) -> list[int]:
    positions = []
    idx = source.find("\n")
    while idx != -1:
        positions.append(idx)
        idx = source.find("\n", idx + 1)
    return positions


def tokenize(source: str) -> list[Token]:
    """Split source into tokens; total for arbitrary input."""
    newlines = _newline_positions(source)
    n_newlines = len(newlines)
    tokens = []
    append = tokens.append
    kind_names = _KIND_NAME
    keywords = KEYWORDS
    sized = _SIZED_TYPE.match
    ident = K_IDENT
    li = 0  # tokens arrive in order, so the newline cursor only moves forward
    line_start = 0
    for code, start, end in scan_solidity(source):
        while li < n_newlines and newlines[li] < start:
            li += 1
            line_start = newlines[li - 1] + 1
        text = source[start:end]
        if code == ident and (text in keywords or sized(text)):
            kind = "keyword"
        else:
            kind = kind_names[code]
        append(Token(kind, text, li + 1, start - line_start + 1, start, end))
    return tokens
