"""Pattern detectors over the Solidity AST.

Finds sender guards (modifier / require / if forms) and fund-modifying
statements (balance-mapping writes, native transfers, selfdestruct), then
pairs them per function into raw detections for the risk engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..config import AnalyzerConfig
from ..diagnostics import Diagnostic
from . import ast
from .symbols import is_address_to_uint_mapping, is_nested_address_to_uint_mapping

MODIFIER_GUARD = "ModifierGuard"
REQUIRE_GUARD = "RequireGuard"
IF_GUARD = "IfGuard"

BALANCE_MAPPING_WRITE = "BalanceMappingWrite"
NATIVE_TRANSFER = "NativeTransfer"
SELF_DESTRUCT = "SelfDestruct"


@dataclass(frozen=True)
class IfCond:
    """Location-identified condition of an enclosing if statement."""
    line: int
    column: int
    text: str


@dataclass(frozen=True)
class GuardSite:
    form: str  # ModifierGuard | RequireGuard | IfGuard
    owner_expr: str  # rendered non-sender side of the comparison
    line: int
    column: int
    enclosing: str  # function or modifier name
    text: str  # condition source text
    in_modifier: bool
    enclosing_line: int


@dataclass(frozen=True)
class FundModSite:
    kind: str  # BalanceMappingWrite | NativeTransfer | SelfDestruct
    target: str  # rendered lvalue/callee text
    line: int
    column: int
    function: str
    guarding_if_chain: tuple[IfCond, ...]  # innermost-last, then-branches only
    text: str
    enclosing_line: int


@dataclass
class RawDetection:
    contract: str
    function: str
    privileged: bool
    fund_sites: list[FundModSite] = field(default_factory=list)
    guard_sites: list[GuardSite] = field(default_factory=list)
    line: int = 1
    column: int = 1


def _is_sender_expr(expr: ast.Expr, config: AnalyzerConfig) -> bool:
    if isinstance(expr, ast.MsgSender):
        return True
    if config.tx_origin and isinstance(expr, ast.Member) and expr.member == "origin":
        base = expr.base
        return isinstance(base, ast.Identifier) and base.name == "tx"
    return False


def _collect_sender_comparisons(
    expr: ast.Expr, config: AnalyzerConfig, out: list[tuple[ast.Expr, str]]
) -> None:
    if isinstance(expr, (ast.And, ast.Or)):
        _collect_sender_comparisons(expr.lhs, config, out)
        _collect_sender_comparisons(expr.rhs, config, out)
        return
    if isinstance(expr, (ast.Eq, ast.Neq)):
        polarity = "eq" if isinstance(expr, ast.Eq) else "neq"
        lhs_sender = _is_sender_expr(expr.lhs, config)
        rhs_sender = _is_sender_expr(expr.rhs, config)
        if lhs_sender and not rhs_sender:
            out.append((expr.rhs, polarity))
        elif rhs_sender and not lhs_sender:
            out.append((expr.lhs, polarity))


def _sender_comparison(
    expr: ast.Expr, config: AnalyzerConfig
) -> tuple[ast.Expr, str] | None:
    """Find a sender comparison under &&/|| nesting, preferring `==` over
    `!=`; self-comparisons never match."""
    found: list[tuple[ast.Expr, str]] = []
    _collect_sender_comparisons(expr, config, found)
    for owner, polarity in found:
        if polarity == "eq":
            return owner, polarity
    return found[0] if found else None


def _render_owner(expr: ast.Expr) -> str:
    return expr.text or ast.render_expr(expr)


def find_sender_guards(contract: ast.ContractDecl, config: AnalyzerConfig) -> list[GuardSite]:
    """One GuardSite per sender-guard occurrence, sorted by location."""
    sites: list[GuardSite] = []
    for modifier in contract.modifiers:
        _scan_guards(modifier.body, modifier.name, True, modifier.line, config, sites)
    for function in contract.functions:
        _scan_guards(function.body, function.name, False, function.line, config, sites)
    sites.sort(key=lambda s: (s.line, s.column))
    return sites


def _scan_guards(
    body: list[ast.Stmt],
    enclosing: str,
    in_modifier: bool,
    enclosing_line: int,
    config: AnalyzerConfig,
    sites: list[GuardSite],
) -> None:
    for stmt in body:
        if isinstance(stmt, ast.Require):
            found = _sender_comparison(stmt.condition, config)
            if found is not None and found[1] == "eq":
                form = MODIFIER_GUARD if in_modifier else REQUIRE_GUARD
                sites.append(GuardSite(
                    form, _render_owner(found[0]), stmt.line, stmt.column,
                    enclosing, stmt.condition.text, in_modifier, enclosing_line,
                ))
        elif isinstance(stmt, ast.If):
            found = _sender_comparison(stmt.condition, config)
            if found is not None:
                owner, polarity = found
                if polarity == "eq":
                    sites.append(GuardSite(
                        IF_GUARD, _render_owner(owner), stmt.line, stmt.column,
                        enclosing, stmt.condition.text, in_modifier, enclosing_line,
                    ))
                elif config.revert_guard and _branch_reverts(stmt.then_body):
                    # `if (msg.sender != owner) revert;` protects everything after
                    # it, so it carries require-like scope.
                    form = MODIFIER_GUARD if in_modifier else REQUIRE_GUARD
                    sites.append(GuardSite(
                        form, _render_owner(owner), stmt.line, stmt.column,
                        enclosing, stmt.condition.text, in_modifier, enclosing_line,
                    ))
            _scan_guards(stmt.then_body, enclosing, in_modifier, enclosing_line, config, sites)
            _scan_guards(stmt.else_body, enclosing, in_modifier, enclosing_line, config, sites)


def _branch_reverts(body: list[ast.Stmt]) -> bool:
    return any(isinstance(stmt, ast.Revert) for stmt in body)


def find_fund_modifications(
    contract: ast.ContractDecl,
    symbols: dict[str, ast.StateVar],
    config: AnalyzerConfig,
) -> list[FundModSite]:
    """One FundModSite per fund-modifying statement in any function body."""
    sites: list[FundModSite] = []
    for function in contract.functions:
        _scan_funds(function.body, (), function, symbols, config, sites)
    sites.sort(key=lambda s: (s.line, s.column))
    return sites


def _scan_funds(
    body: list[ast.Stmt],
    chain: tuple[IfCond, ...],
    function: ast.FunctionDecl,
    symbols: dict[str, ast.StateVar],
    config: AnalyzerConfig,
    sites: list[FundModSite],
) -> None:
    for stmt in body:
        if isinstance(stmt, ast.Assign):
            target = _balance_mapping_target(stmt.lvalue, symbols, config)
            if target is not None:
                sites.append(FundModSite(
                    BALANCE_MAPPING_WRITE, target, stmt.line, stmt.column,
                    function.name, chain, stmt.text, function.line,
                ))
            _scan_call_sites(stmt.rvalue, stmt, chain, function, config, sites)
            _scan_call_sites(stmt.lvalue, stmt, chain, function, config, sites)
        elif isinstance(stmt, ast.Call):
            _scan_call_sites(stmt.expr, stmt, chain, function, config, sites)
        elif isinstance(stmt, ast.Require):
            _scan_call_sites(stmt.condition, stmt, chain, function, config, sites)
        elif isinstance(stmt, ast.If):
            _scan_call_sites(stmt.condition, stmt, chain, function, config, sites)
            inner = chain + (IfCond(stmt.line, stmt.column, stmt.condition.text),)
            _scan_funds(stmt.then_body, inner, function, symbols, config, sites)
            _scan_funds(stmt.else_body, chain, function, symbols, config, sites)


def _balance_mapping_target(
    lvalue: ast.Expr,
    symbols: dict[str, ast.StateVar],
    config: AnalyzerConfig,
) -> str | None:
    depth = 0
    expr = lvalue
    while isinstance(expr, ast.Index):
        depth += 1
        expr = expr.base
    if depth == 0 or not isinstance(expr, ast.Identifier):
        return None
    name = expr.name
    if depth == 1:
        return name if is_address_to_uint_mapping(symbols, name) else None
    if config.nested_mappings and is_nested_address_to_uint_mapping(symbols, name, depth):
        return name
    return None


def _scan_call_sites(
    expr: ast.Expr,
    stmt: ast.Stmt,
    chain: tuple[IfCond, ...],
    function: ast.FunctionDecl,
    config: AnalyzerConfig,
    sites: list[FundModSite],
) -> None:
    stack = [expr]
    while stack:
        node = stack.pop()
        if isinstance(node, ast.CallExpr):
            classified = _classify_call(node, config)
            if classified is not None:
                kind, target = classified
                sites.append(FundModSite(
                    kind, target, node.line, node.column,
                    function.name, chain, stmt.text, function.line,
                ))
            stack.append(node.callee)
            stack.extend(node.args)
        elif isinstance(node, (ast.Eq, ast.Neq, ast.And, ast.Or)):
            stack.append(node.lhs)
            stack.append(node.rhs)
        elif isinstance(node, ast.Member):
            stack.append(node.base)
        elif isinstance(node, ast.Index):
            stack.append(node.base)
            stack.append(node.index)
        elif isinstance(node, ast.AddressCast):
            stack.append(node.inner)


def _classify_call(call: ast.CallExpr, config: AnalyzerConfig) -> tuple[str, str] | None:
    callee = call.callee
    if isinstance(callee, ast.Identifier) and callee.name == "selfdestruct":
        if config.selfdestruct:
            return SELF_DESTRUCT, "selfdestruct"
        return None
    if not config.native_transfer:
        return None
    if isinstance(callee, ast.Member):
        if callee.member in ("transfer", "send"):
            return NATIVE_TRANSFER, callee.text or ast.render_expr(callee)
        if callee.member == "call" and call.options and "value" in call.options:
            return NATIVE_TRANSFER, callee.text or ast.render_expr(callee)
    # Legacy value-bearing call: target.call.value(x)(...)
    if isinstance(callee, ast.CallExpr) and isinstance(callee.callee, ast.Member) \
            and callee.callee.member == "value":
        base = callee.callee.base
        if isinstance(base, ast.Member) and base.member == "call":
            return NATIVE_TRANSFER, base.text or ast.render_expr(base)
    return None


def is_privileged_scoped(site: FundModSite, guards: list[GuardSite]) -> bool:
    """True when the site sits in the then-branch of a detected IfGuard."""
    if_guard_locations = {(g.line, g.column) for g in guards if g.form == IF_GUARD}
    return any((cond.line, cond.column) in if_guard_locations
               for cond in site.guarding_if_chain)


def pair_detections(
    contract: ast.ContractDecl,
    guards: list[GuardSite],
    fund_sites: list[FundModSite],
    diagnostics: list[Diagnostic] | None = None,
) -> list[RawDetection]:
    """One RawDetection per function carrying any guard or fund site."""
    modifier_names = {m.name for m in contract.modifiers}
    modifier_guards: dict[str, list[GuardSite]] = {}
    function_guards: dict[tuple[str, int], list[GuardSite]] = {}
    for site in guards:
        if site.in_modifier:
            modifier_guards.setdefault(site.enclosing, []).append(site)
        else:
            function_guards.setdefault((site.enclosing, site.enclosing_line), []).append(site)

    function_funds: dict[tuple[str, int], list[FundModSite]] = {}
    for site in fund_sites:
        function_funds.setdefault((site.function, site.enclosing_line), []).append(site)

    detections: list[RawDetection] = []
    for function in contract.functions:
        key = (function.name, function.line)
        guard_list = list(function_guards.get(key, ()))
        for invocation in function.modifier_invocations:
            if invocation not in modifier_names:
                if diagnostics is not None:
                    diagnostics.append(Diagnostic(
                        f"function '{function.name}' invokes unknown modifier "
                        f"'{invocation}'",
                        function.line, function.column,
                    ))
                continue
            guard_list.extend(modifier_guards.get(invocation, ()))
        funds = function_funds.get(key, [])
        if guard_list or funds:
            guard_list.sort(key=lambda s: (s.line, s.column))
            detections.append(RawDetection(
                contract.name, function.name, bool(guard_list),
                funds, guard_list, function.line, function.column,
            ))
    return detections
