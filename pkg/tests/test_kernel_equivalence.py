"""The compiled and pure scan kernels must agree exactly."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from centriscan import _scan_py

_scan_c = pytest.importorskip(
    "centriscan._scan_c", reason="compiled kernel not built")

from helpers import all_corpus_files  # noqa: E402


def test_kind_codes_match():
    for name in ("K_IDENT", "K_PUNCT", "K_STRING", "K_NUMBER", "K_COMMENT", "K_UNKNOWN"):
        assert getattr(_scan_c, name) == getattr(_scan_py, name)


def test_corpus_equivalence():
    for path in all_corpus_files():
        with open(path, encoding="utf-8") as fh:
            src = fh.read()
        assert _scan_c.scan_solidity(src) == _scan_py.scan_solidity(src), path


@given(st.text(max_size=400))
@settings(max_examples=300, deadline=None)
def test_arbitrary_text_equivalence(src):
    assert _scan_c.scan_solidity(src) == _scan_py.scan_solidity(src)


@given(st.text(
    alphabet=st.sampled_from(list('ab_$ \t\n"\'\\/*=!&|<>+-.0123456789xXeE_{}()[];,~^%?:')),
    max_size=200,
))
@settings(max_examples=500, deadline=None)
def test_lexical_edge_equivalence(src):
    assert _scan_c.scan_solidity(src) == _scan_py.scan_solidity(src)


@given(st.binary(max_size=300))
@settings(max_examples=200, deadline=None)
def test_decoded_bytes_equivalence(data):
    src = data.decode("utf-8", errors="replace")
    assert _scan_c.scan_solidity(src) == _scan_py.scan_solidity(src)
