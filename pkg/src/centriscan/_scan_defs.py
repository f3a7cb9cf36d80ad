"""Lexical tables shared by the pure and compiled token-scan kernels.

Both kernels must agree byte-for-byte on these definitions; the
equivalence test suite enforces it.
"""

K_IDENT = 0
K_PUNCT = 1
K_STRING = 2
K_NUMBER = 3
K_COMMENT = 4
K_UNKNOWN = 5

# Explicit ASCII whitespace only; unicode spaces become `unknown` tokens.
WHITESPACE = " \t\r\n\x0b\x0c"

PUNCT1 = "+-*/%=<>!&|^~?:;,.()[]{}"

PUNCT2 = (
    "==", "!=", "<=", ">=", "&&", "||",
    "+=", "-=", "*=", "/=", "%=", "^=", "|=", "&=",
    "=>", "->", "++", "--", "**", "<<", ">>",
)

PUNCT3 = (">>=", "<<=", "**=")
