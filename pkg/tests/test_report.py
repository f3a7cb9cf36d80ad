"""Finding classification, severity grading, and report rendering."""

import json

import pytest

from centriscan import __version__
from centriscan.config import AnalyzerConfig, UsageError
from centriscan.engine import analyze_solidity_source, analyze_teal_source
from centriscan.report import (
    SEVERITY_BY_KIND,
    Finding,
    build_report,
    meets_threshold,
    render_report,
)

from helpers import corpus_text

CONFIG = AnalyzerConfig()


def _sol_findings(name: str):
    findings, _ = analyze_solidity_source(
        corpus_text("solidity", name), name, CONFIG)
    return findings


def _teal_findings(name: str):
    findings, _ = analyze_teal_source(corpus_text("teal", name), name, CONFIG)
    return findings


def test_guarded_write_is_major_centralization_risk():
    findings = _sol_findings("owner_drain.sol")
    assert [(f.kind, f.severity) for f in findings] == [
        ("CENTRALIZATION_RISK", "MAJOR")]
    roles = [e.role for e in findings[0].evidence]
    assert "guard" in roles and "fund_modification" in roles


def test_empty_contract_yields_no_findings():
    assert _sol_findings("clean.sol") == []


def test_unguarded_put_is_warning():
    findings = _teal_findings("row3_put.teal")
    assert [(f.kind, f.severity) for f in findings] == [
        ("UNPROTECTED_FUND_MODIFICATION", "WARNING")]


def test_guard_only_teal_program_is_info():
    findings = _teal_findings("row1_assert.teal")
    assert [(f.kind, f.severity) for f in findings] == [
        ("PRIVILEGED_FUNCTION", "INFO")]


def test_kind_severity_bijection():
    all_findings = []
    for name in ("owner_drain.sol", "row2_require.sol", "row4_balance.sol"):
        all_findings += _sol_findings(name)
    for name in ("guarded_put.teal", "row1_assert.teal", "row3_put.teal"):
        all_findings += _teal_findings(name)
    kinds_seen = {f.kind for f in all_findings}
    assert kinds_seen == set(SEVERITY_BY_KIND)
    for f in all_findings:
        assert f.severity == SEVERITY_BY_KIND[f.kind]


def test_centralization_risk_evidence_completeness():
    for findings in (_sol_findings("owner_drain.sol"), _teal_findings("guarded_put.teal")):
        for f in findings:
            if f.kind == "CENTRALIZATION_RISK":
                roles = {e.role for e in f.evidence}
                assert roles == {"guard", "fund_modification"}


def _report(findings, files_scanned=1):
    return build_report(findings, [], files_scanned, CONFIG, __version__)


def test_empty_report_json_schema():
    rendered = render_report(_report([], files_scanned=0), "json")
    payload = json.loads(rendered)
    assert payload["version"] == __version__
    assert payload["files_scanned"] == 0
    assert payload["findings"] == []
    assert payload["counts"] == {"major": 0, "warning": 0, "info": 0}
    assert payload["diagnostics"] == []
    assert list(payload) == ["version", "config_fingerprint", "files_scanned",
                             "findings", "counts", "diagnostics"]


def test_single_finding_text_golden():
    report = _report(_sol_findings("owner_drain.sol"))
    golden = (
        "MAJOR CENTRALIZATION_RISK owner_drain.sol:10:5 function 'fun' combines "
        "a sender guard with fund-modifying logic\n"
        "    guard owner_drain.sol:6:9 msg.sender == owner\n"
        "    fund_modification owner_drain.sol:11:9 bals[to] = bals[to].add(1);"
    )
    assert render_report(report, "text") == golden


def test_findings_render_in_sorted_order():
    low = Finding("PRIVILEGED_FUNCTION", "INFO", "solidity", "b.sol", 2, 1, "m", ())
    high = Finding("PRIVILEGED_FUNCTION", "INFO", "solidity", "a.sol", 9, 1, "m", ())
    report = _report([low, high])
    lines = render_report(report, "text").splitlines()
    assert "a.sol:9:1" in lines[0] and "b.sol:2:1" in lines[1]


def test_counts_conserve_findings():
    findings = (_sol_findings("owner_drain.sol") + _sol_findings("row2_require.sol")
                + _teal_findings("row3_put.teal"))
    report = _report(findings)
    assert sum(report.counts.values()) == len(report.findings) == 3
    assert report.counts == {"major": 1, "warning": 1, "info": 1}


def test_json_is_deterministic_and_config_sensitive():
    findings = _sol_findings("owner_drain.sol")
    a = render_report(_report(findings), "json")
    b = render_report(_report(findings), "json")
    assert a == b
    other_config = AnalyzerConfig(owner_keys=("gov",))
    c = render_report(build_report(findings, [], 1, other_config, __version__), "json")
    assert json.loads(a)["config_fingerprint"] != json.loads(c)["config_fingerprint"]


def test_json_schema_field_names():
    report = _report(_sol_findings("owner_drain.sol"))
    payload = json.loads(render_report(report, "json"))
    finding = payload["findings"][0]
    assert list(finding) == ["kind", "severity", "language", "file", "line",
                             "column", "message", "evidence"]
    assert list(finding["evidence"][0]) == ["role", "file", "line", "column", "text"]


def test_unknown_format_is_usage_error():
    with pytest.raises(UsageError):
        render_report(_report([]), "sarif")


def test_meets_threshold_ordering():
    report = _report(_sol_findings("row2_require.sol"))  # one INFO finding
    assert meets_threshold(report, "info")
    assert not meets_threshold(report, "warning")
    assert not meets_threshold(report, "major")
    assert not meets_threshold(report, "none")
    major = _report(_sol_findings("owner_drain.sol"))
    assert meets_threshold(major, "major")
    assert not meets_threshold(major, "none")


def test_evidence_text_is_single_line():
    findings, _ = analyze_solidity_source(
        "contract C { mapping(address => uint) bals;\n"
        "function f(address t) public {\n"
        "bals[t] =\n    bals[t].add(1); } }", "x.sol", CONFIG)
    evidence = findings[0].evidence[0]
    assert "\n" not in evidence.text


def test_teal_dead_code_put_yields_no_finding():
    source = (
        "int 1\nreturn\n"
        "dead:\n"
        'int 0\nbyte "MyBalance"\nint 5\napp_local_put\nint 1\nreturn\n'
    )
    findings, diagnostics = analyze_teal_source(source, "x.teal", CONFIG)
    assert findings == []
    assert any("unreachable" in d.message for d in diagnostics)
