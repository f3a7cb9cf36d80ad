# cython: language_level=3
# cython: boundscheck=False
"""Compiled token-scan kernel.

Hand-rolled character loop over the same lexical rules as _scan_py; the
equivalence test suite keeps the twins in lock step.
"""

from centriscan._scan_defs import (
    K_COMMENT,
    K_IDENT,
    K_NUMBER,
    K_PUNCT,
    K_STRING,
    K_UNKNOWN,
    PUNCT1,
    PUNCT2,
    PUNCT3,
)

cdef int _K_IDENT = K_IDENT
cdef int _K_PUNCT = K_PUNCT
cdef int _K_STRING = K_STRING
cdef int _K_NUMBER = K_NUMBER
cdef int _K_COMMENT = K_COMMENT
cdef int _K_UNKNOWN = K_UNKNOWN

cdef str _P1 = PUNCT1
cdef frozenset _P2 = frozenset(PUNCT2)
cdef frozenset _P3 = frozenset(PUNCT3)


cdef inline bint _is_ident_start(Py_UCS4 c):
    return (u'a' <= c <= u'z') or (u'A' <= c <= u'Z') or c == u'_' or c == u'$'


cdef inline bint _is_ident_part(Py_UCS4 c):
    return (u'a' <= c <= u'z') or (u'A' <= c <= u'Z') or (u'0' <= c <= u'9') \
        or c == u'_' or c == u'$'


cdef inline bint _is_digit(Py_UCS4 c):
    return u'0' <= c <= u'9'


cdef inline bint _is_hex(Py_UCS4 c):
    return (u'0' <= c <= u'9') or (u'a' <= c <= u'f') or (u'A' <= c <= u'F')


cdef Py_ssize_t _scan_number(str src, Py_ssize_t i, Py_ssize_t n):
    cdef Py_ssize_t j = i + 1
    cdef Py_ssize_t k
    cdef Py_UCS4 c
    if src[i] == u'0' and j < n and (src[j] == u'x' or src[j] == u'X'):
        j += 1
        while j < n:
            c = src[j]
            if _is_hex(c) or c == u'_':
                j += 1
            else:
                break
        return j
    while j < n:
        c = src[j]
        if _is_digit(c) or c == u'_':
            j += 1
        else:
            break
    if j + 1 < n and src[j] == u'.' and _is_digit(src[j + 1]):
        j += 2
        while j < n:
            c = src[j]
            if _is_digit(c) or c == u'_':
                j += 1
            else:
                break
    if j < n and (src[j] == u'e' or src[j] == u'E'):
        k = j + 1
        if k < n and (src[k] == u'+' or src[k] == u'-'):
            k += 1
        if k < n and _is_digit(src[k]):
            j = k + 1
            while j < n:
                c = src[j]
                if _is_digit(c) or c == u'_':
                    j += 1
                else:
                    break
    return j


cdef Py_ssize_t _scan_string(str src, Py_ssize_t i, Py_ssize_t n):
    cdef Py_UCS4 q = src[i]
    cdef Py_ssize_t j = i + 1
    cdef Py_UCS4 c
    while j < n:
        c = src[j]
        if c == u'\\':
            if j + 1 < n:
                j += 2
                continue
            return j  # trailing backslash stays unconsumed
        if c == q:
            return j + 1
        if c == u'\n':
            return j
        j += 1
    return j


def scan_solidity(str src not None):
    """Scan src into (kind, start, end) triples; whitespace is skipped."""
    cdef Py_ssize_t i = 0, j, k, n = len(src)
    cdef Py_UCS4 ch
    cdef list out = []
    while i < n:
        ch = src[i]
        if ch == u' ' or ch == u'\t' or ch == u'\r' or ch == u'\n' \
                or ch == u'\x0b' or ch == u'\x0c':
            i += 1
            continue
        if _is_ident_start(ch):
            j = i + 1
            while j < n and _is_ident_part(src[j]):
                j += 1
            out.append((_K_IDENT, i, j))
            i = j
            continue
        if _is_digit(ch):
            j = _scan_number(src, i, n)
            out.append((_K_NUMBER, i, j))
            i = j
            continue
        if ch == u'/' and i + 1 < n:
            if src[i + 1] == u'/':
                j = i + 2
                while j < n and src[j] != u'\n':
                    j += 1
                out.append((_K_COMMENT, i, j))
                i = j
                continue
            if src[i + 1] == u'*':
                k = src.find(u"*/", i + 2)
                j = n if k < 0 else k + 2
                out.append((_K_COMMENT, i, j))
                i = j
                continue
        if ch == u'"' or ch == u"'":
            j = _scan_string(src, i, n)
            out.append((_K_STRING, i, j))
            i = j
            continue
        if i + 3 <= n and src[i:i + 3] in _P3:
            out.append((_K_PUNCT, i, i + 3))
            i += 3
            continue
        if i + 2 <= n and src[i:i + 2] in _P2:
            out.append((_K_PUNCT, i, i + 2))
            i += 2
            continue
        if ch in _P1:
            out.append((_K_PUNCT, i, i + 1))
            i += 1
            continue
        out.append((_K_UNKNOWN, i, i + 1))
        i += 1
    return out
