"""Pure-Python token-scan kernel, the fallback twin of _scan_c.

Produces (kind, start, end) triples covering every non-whitespace byte of
the input. Driven by a single master regex so the hot loop runs in C even
without the compiled extension.
"""

import re

from ._scan_defs import (
    K_COMMENT,
    K_IDENT,
    K_NUMBER,
    K_PUNCT,
    K_STRING,
    K_UNKNOWN,
    PUNCT1,
    PUNCT2,
    PUNCT3,
    WHITESPACE,
)


def _build_pattern() -> re.Pattern:
    p3 = "|".join(re.escape(p) for p in PUNCT3)
    p2 = "|".join(re.escape(p) for p in PUNCT2)
    p1 = "[" + re.escape(PUNCT1) + "]"
    ws = "[" + re.escape(WHITESPACE) + "]+"
    return re.compile(
        "(?P<ws>" + ws + ")"
        # Line comment, terminated block comment, unterminated block comment.
        "|(?P<comment>//[^\n]*|/\\*.*?\\*/|/\\*.*)"
        # Strings stop at an unescaped quote, newline, or EOF; a backslash
        # consumes the following character (including a newline).
        "|(?P<string>\"(?:\\\\.|[^\"\\\\\n])*\"?|'(?:\\\\.|[^'\\\\\n])*'?)"
        "|(?P<number>0[xX][0-9a-fA-F_]*"
        "|[0-9][0-9_]*(?:\\.[0-9][0-9_]*)?(?:[eE][+-]?[0-9][0-9_]*)?)"
        "|(?P<ident>[A-Za-z_$][A-Za-z0-9_$]*)"
        "|(?P<punct>" + p3 + "|" + p2 + "|" + p1 + ")"
        "|(?P<unknown>.)",
        re.DOTALL,
    )


_PATTERN = _build_pattern()

_KIND_CODE = {
    "comment": K_COMMENT,
    "string": K_STRING,
    "number": K_NUMBER,
    "ident": K_IDENT,
    "punct": K_PUNCT,
    "unknown": K_UNKNOWN,
}


def scan_solidity(src: str) -> list[tuple[int, int, int]]:
    """Scan src into (kind, start, end) triples; whitespace is skipped."""
    out = []
    append = out.append
    kinds = _KIND_CODE
    for m in _PATTERN.finditer(src):
        group = m.lastgroup
        if group == "ws":
            continue
        append((kinds[group], m.start(), m.end()))
    return out
