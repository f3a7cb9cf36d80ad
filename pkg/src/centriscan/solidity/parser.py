"""Tolerant recursive-descent parser for the Solidity subset.

Never raises on any token stream: constructs outside the subset are
absorbed into Opaque nodes via brace/semicolon-matched recovery, each with
a note-level diagnostic, so downstream detectors see a best-effort AST.
"""

from __future__ import annotations

from ..diagnostics import Diagnostic
from . import ast
from .tokens import Token, tokenize

_ASSIGN_OPS = frozenset({"=", "+=", "-=", "*=", "/=", "%=", "|=", "&=", "^=", "<<=", ">>=", "**="})
_CMP_OPS = frozenset({"<", ">", "<=", ">="})
_ARITH_OPS = frozenset({"+", "-", "*", "/", "%", "**", "<<", ">>", "&", "|", "^"})
_UNARY_OPS = frozenset({"!", "-", "~", "+", "++", "--", "delete", "new"})
_EXPR_STOP = frozenset({";", ")", "]", "}", ",", "{"})

_FN_HEADER_KEYWORDS = frozenset({
    "public", "external", "internal", "private",
    "view", "pure", "payable", "constant", "virtual", "override",
})
_VAR_KEYWORDS = frozenset({
    "public", "private", "internal", "constant", "immutable", "override", "payable",
})
_ELEMENTARY_TYPES = frozenset({
    "address", "bool", "string", "bytes", "byte", "int", "uint", "fixed", "ufixed",
})

_MAX_EXPR_DEPTH = 50
_MAX_STMT_DEPTH = 50

# Statement keywords that always fall outside the recognized subset.
_OPAQUE_STMT_KEYWORDS = frozenset({
    "for", "while", "do", "assembly", "try", "emit", "break", "continue",
})


def parse_source(tokens: list[Token], path: str, source: str | None = None) -> ast.SourceUnit:
    """Parse a token stream into a SourceUnit; total for any input."""
    return _Parser(tokens, path, source).parse_unit()


def parse_solidity(source: str, path: str = "<solidity>") -> ast.SourceUnit:
    """Tokenize and parse source text in one step."""
    return parse_source(tokenize(source), path, source)


def _is_type_start(tok: Token) -> bool:
    if tok.kind == "identifier":
        return True
    if tok.kind == "keyword":
        return tok.text in _ELEMENTARY_TYPES or tok.text == "mapping" \
            or tok.text[:1] in "ui" and any(c.isdigit() for c in tok.text) \
            or tok.text.startswith("bytes")
    return False


class _Parser:
    def __init__(self, tokens: list[Token], path: str, source: str | None):
        self.toks = [t for t in tokens if t.kind != "comment"]
        self.n = len(self.toks)
        self.src = source
        self.path = path
        self.diags: list[Diagnostic] = []
        self.i = 0
        self.expr_depth = 0
        self.stmt_depth = 0

    # --- token stream helpers ------------------------------------------

    def _peek(self, k: int = 0) -> Token | None:
        idx = self.i + k
        return self.toks[idx] if idx < self.n else None

    def _text(self, k: int = 0) -> str:
        tok = self._peek(k)
        return tok.text if tok is not None else ""

    def _advance(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def _eat(self, text: str) -> bool:
        if self.i < self.n and self.toks[self.i].text == text:
            self.i += 1
            return True
        return False

    def _expect(self, text: str, context: str) -> bool:
        if self._eat(text):
            return True
        self._note(f"expected '{text}' in {context}")
        return False

    def _note(self, message: str, severity: str = "note") -> None:
        tok = self._peek() or (self.toks[-1] if self.toks else None)
        line, column = (tok.line, tok.column) if tok else (1, 1)
        self.diags.append(Diagnostic(message, line, column, severity))

    def _span_text(self, start: int, end: int) -> str:
        if start >= end:
            return ""
        first, last = self.toks[start], self.toks[end - 1]
        if self.src is not None:
            return self.src[first.start:last.end]
        return " ".join(t.text for t in self.toks[start:end])

    # --- recovery --------------------------------------------------------

    def _skip_balanced(self) -> None:
        """Consume a bracketed region starting at the current opener."""
        depth = 0
        while self.i < self.n:
            t = self._advance().text
            if t in "([{":
                depth += 1
            elif t in ")]}":
                depth -= 1
                if depth <= 0:
                    return

    def _recover_region(self) -> None:
        """Skip to a statement/member boundary: a `;` at depth 0, a balanced
        `{...}` opened at depth 0, or an unmatched `}` (left unconsumed)."""
        depth = 0
        while self.i < self.n:
            t = self._text()
            if depth == 0:
                if t == ";":
                    self.i += 1
                    return
                if t == "{":
                    self._skip_balanced()
                    return
                if t == "}":
                    return
            if t in "([":
                depth += 1
            elif t in ")]":
                depth = max(0, depth - 1)
            elif t == "{":
                depth += 1
            elif t == "}":
                depth = max(0, depth - 1)
            self.i += 1

    def _opaque_stmt(self, note: str | None = None) -> ast.Opaque:
        start = self.i
        tok = self._peek()
        line, column = (tok.line, tok.column) if tok else (1, 1)
        if note:
            self._note(note)
        self._recover_region()
        if self.i == start and self.i < self.n:
            self.i += 1  # guarantee progress when stuck on a stray '}'
        return ast.Opaque(line, column, self._span_text(start, self.i))

    # --- source unit -----------------------------------------------------

    def parse_unit(self) -> ast.SourceUnit:
        contracts = []
        while self.i < self.n:
            t = self._text()
            if t in ("contract", "interface", "library") or (
                t == "abstract" and self._text(1) == "contract"
            ):
                contracts.append(self._parse_contract())
            elif t in ("pragma", "import"):
                self._recover_region()
            else:
                self._opaque_stmt("skipped unrecognized top-level construct")
        return ast.SourceUnit(self.path, contracts, self.diags)

    def _parse_contract(self) -> ast.ContractDecl:
        self._eat("abstract")
        kw = self._advance()  # contract | interface | library
        tok = self._peek()
        if tok is not None and tok.kind == "identifier":
            name = self._advance().text
        else:
            name = ""
            self._note(f"missing name after '{kw.text}'")
        contract = ast.ContractDecl(name, line=kw.line, column=kw.column)
        # Skip inheritance clause up to the body opener.
        depth = 0
        while self.i < self.n:
            t = self._text()
            if t == "{" and depth == 0:
                break
            if t in "([":
                depth += 1
            elif t in ")]":
                depth = max(0, depth - 1)
            elif t == "}":
                self._note("contract body not found")
                return contract
            self.i += 1
        if not self._eat("{"):
            self._note("contract body not found")
            return contract
        closed = False
        while self.i < self.n:
            if self._eat("}"):
                closed = True
                break
            self._parse_member(contract)
        if not closed:
            self._note(f"unterminated contract '{name}' at end of input")
        return contract

    # --- contract members -------------------------------------------------

    def _parse_member(self, contract: ast.ContractDecl) -> None:
        tok = self._peek()
        if tok is None:
            return
        t = tok.text
        if t == "function":
            contract.functions.append(self._parse_function(named=True))
        elif t in ("constructor", "fallback", "receive"):
            contract.functions.append(self._parse_function(named=False))
        elif t == "modifier":
            contract.modifiers.append(self._parse_modifier())
        elif t == ";":
            self.i += 1
        elif t == "mapping" or _is_type_start(tok):
            var = self._try_state_var()
            if var is not None:
                contract.state_vars.append(var)
            else:
                self._opaque_stmt("skipped unrecognized contract member")
        else:
            self._opaque_stmt("skipped unrecognized contract member")

    def _try_state_var(self) -> ast.StateVar | None:
        save = self.i
        type_desc = self._parse_type()
        if type_desc is None:
            self.i = save
            return None
        while self._text() in _VAR_KEYWORDS:
            self.i += 1
            if self._text() == "(":  # override(Base) carries arguments
                self._skip_balanced()
        tok = self._peek()
        if tok is None or tok.kind != "identifier":
            self.i = save
            return None
        name = self._advance().text
        if self._text() == "=":
            self.i += 1
            depth = 0
            while self.i < self.n:
                t = self._text()
                if t == ";" and depth == 0:
                    break
                if t == "}" and depth == 0:
                    break
                if t in "([{":
                    depth += 1
                elif t in ")]}":
                    depth = max(0, depth - 1)
                self.i += 1
        if not self._eat(";"):
            self.i = save
            return None
        return ast.StateVar(name, type_desc, tok.line, tok.column)

    def _parse_type(self) -> ast.TypeDesc | None:
        start = self.i
        tok = self._peek()
        if tok is None:
            return None
        if tok.text == "mapping":
            self.i += 1
            if not self._eat("("):
                return None
            key = self._parse_type()
            if key is None or not self._eat("=>"):
                return None
            value = self._parse_type()
            if value is None or not self._eat(")"):
                return None
            return ast.TypeDesc("mapping", self._span_text(start, self.i), key, value)
        if not _is_type_start(tok) or tok.text == "mapping":
            return None
        self.i += 1
        name = tok.text
        kind = "elementary" if (
            tok.text in _ELEMENTARY_TYPES or (tok.kind == "keyword")
        ) else "other"
        if tok.text == "address" and self._text() == "payable":
            self.i += 1
            name = "address payable"
        while self._text() == "[":
            self._skip_balanced()
            kind = "other"
            name = self._span_text(start, self.i)
        return ast.TypeDesc(kind, name)

    def _parse_modifier(self) -> ast.ModifierDecl:
        kw = self._advance()
        tok = self._peek()
        name = self._advance().text if tok is not None and tok.kind == "identifier" else ""
        if not name:
            self._note("missing modifier name")
        if self._text() == "(":
            self._skip_balanced()
        while self._text() in ("virtual", "override"):
            self.i += 1
            if self._text() == "(":
                self._skip_balanced()
        body: list[ast.Stmt] = []
        if self._text() == "{":
            body = self._parse_block()
        elif not self._eat(";"):
            self._note(f"modifier '{name}' has no body")
        return ast.ModifierDecl(name, body, kw.line, kw.column)

    def _parse_function(self, named: bool) -> ast.FunctionDecl:
        kw = self._advance()  # function | constructor | fallback | receive
        name = ""
        if named:
            tok = self._peek()
            if tok is not None and tok.kind in ("identifier", "keyword") and tok.text != "(":
                name = self._advance().text
        if self._text() == "(":
            self._skip_balanced()
        invocations: list[str] = []
        body: list[ast.Stmt] = []
        while self.i < self.n:
            t = self._text()
            if t == "{":
                body = self._parse_block()
                break
            if t == ";":
                self.i += 1
                break
            if t == "returns":
                self.i += 1
                if self._text() == "(":
                    self._skip_balanced()
                continue
            if t in _FN_HEADER_KEYWORDS:
                self.i += 1
                if t == "override" and self._text() == "(":
                    self._skip_balanced()
                continue
            tok = self._peek()
            if tok is not None and tok.kind == "identifier":
                self.i += 1
                invocations.append(t)
                if self._text() == "(":
                    self._skip_balanced()
                continue
            self._note(f"unexpected token {t!r} in function header")
            self.i += 1
        return ast.FunctionDecl(name, invocations, body, kw.line, kw.column)

    # --- statements --------------------------------------------------------

    def _parse_block(self) -> list[ast.Stmt]:
        self._expect("{", "block")
        stmts: list[ast.Stmt] = []
        while self.i < self.n and self._text() != "}":
            stmts.extend(self._parse_statement())
        if not self._eat("}"):
            self._note("unterminated block at end of input")
        return stmts

    def _parse_statement(self) -> list[ast.Stmt]:
        if self.stmt_depth >= _MAX_STMT_DEPTH:
            return [self._opaque_stmt("statement nesting too deep")]
        self.stmt_depth += 1
        try:
            return self._parse_statement_inner()
        finally:
            self.stmt_depth -= 1

    def _parse_statement_inner(self) -> list[ast.Stmt]:
        tok = self._peek()
        if tok is None:
            return []
        t = tok.text
        if t == "{":
            return self._parse_block()
        if t == "unchecked" and self._text(1) == "{":
            self.i += 1
            return self._parse_block()
        if t == "require":
            return [self._parse_require()]
        if t == "if":
            return [self._parse_if()]
        if t == "revert":
            start = self.i
            self._recover_region()
            return [ast.Revert(tok.line, tok.column, self._span_text(start, self.i))]
        if t == "return":
            start = self.i
            self._recover_region()
            return [ast.Return(tok.line, tok.column, self._span_text(start, self.i))]
        if t == "_" and self._text(1) == ";":
            self.i += 2
            return [ast.Placeholder(tok.line, tok.column, "_;")]
        if t == ";":  # empty statement
            self.i += 1
            return []
        if t in _OPAQUE_STMT_KEYWORDS:
            return [self._opaque_stmt("statement outside recognized subset")]
        nxt = self._peek(1)
        if nxt is not None and nxt.kind == "identifier" and (
            tok.kind == "identifier" or (tok.kind == "keyword" and _is_type_start(tok))
        ):
            # Two adjacent words start a local declaration, never an expression.
            return [self._opaque_stmt("statement outside recognized subset")]
        return [self._parse_expression_statement()]

    def _parse_require(self) -> ast.Stmt:
        start = self.i
        kw = self._advance()
        if not self._eat("("):
            self.i = start
            return self._opaque_stmt("malformed require")
        condition = self._parse_expr()
        if self._text() == ",":
            depth = 0
            while self.i < self.n:
                t = self._text()
                if t == ")" and depth == 0:
                    break
                if t in "([{":
                    depth += 1
                elif t in ")]}":
                    depth = max(0, depth - 1)
                self.i += 1
        self._expect(")", "require")
        if not self._eat(";"):
            self._note("missing ';' after require")
        return ast.Require(kw.line, kw.column, self._span_text(start, self.i), condition)

    def _parse_if(self) -> ast.Stmt:
        start = self.i
        kw = self._advance()
        self._expect("(", "if")
        condition = self._parse_expr()
        self._expect(")", "if")
        then_body = self._parse_branch()
        else_body: list[ast.Stmt] = []
        if self._eat("else"):
            else_body = self._parse_branch()
        return ast.If(kw.line, kw.column, self._span_text(start, self.i),
                      condition, then_body, else_body)

    def _parse_branch(self) -> list[ast.Stmt]:
        if self._text() == "{":
            return self._parse_block()
        return self._parse_statement()

    def _parse_expression_statement(self) -> ast.Stmt:
        start = self.i
        tok = self.toks[start]
        expr = self._parse_expr()
        t = self._text()
        if t in _ASSIGN_OPS and self.i > start:
            op = self._advance().text
            rvalue = self._parse_expr()
            if not self._eat(";"):
                self._note("missing ';' after assignment")
            return ast.Assign(tok.line, tok.column, self._span_text(start, self.i),
                              expr, rvalue, op)
        if t == ";" and isinstance(expr, ast.CallExpr):
            self.i += 1
            return ast.Call(tok.line, tok.column, self._span_text(start, self.i), expr)
        self.i = start
        return self._opaque_stmt("statement outside recognized subset")

    # --- expressions --------------------------------------------------------

    def _parse_expr(self) -> ast.Expr:
        if self.expr_depth >= _MAX_EXPR_DEPTH:
            return self._opaque_expr_scan()
        self.expr_depth += 1
        try:
            start = self.i
            expr = self._parse_or()
            if self._text() == "?":  # ternary folds to opaque
                self.i += 1
                self._parse_expr()
                if self._eat(":"):
                    self._parse_expr()
                return ast.OpaqueExpr(expr.line, expr.column, self._span_text(start, self.i))
            return expr
        finally:
            self.expr_depth -= 1

    def _opaque_expr_scan(self) -> ast.Expr:
        """Depth-limit fallback: consume to an expression boundary, no recursion."""
        start = self.i
        tok = self._peek()
        line, column = (tok.line, tok.column) if tok else (1, 1)
        depth = 0
        while self.i < self.n:
            t = self._text()
            if depth == 0 and t in _EXPR_STOP and t != "{":
                break
            if t in "([{":
                depth += 1
            elif t in ")]}":
                if depth == 0:
                    break
                depth -= 1
            self.i += 1
        return ast.OpaqueExpr(line, column, self._span_text(start, self.i))

    def _parse_or(self) -> ast.Expr:
        start = self.i
        expr = self._parse_and()
        toks = self.toks
        while self.i < self.n and toks[self.i].text == "||":
            self.i += 1
            rhs = self._parse_and()
            expr = ast.Or(expr.line, expr.column, self._span_text(start, self.i), expr, rhs)
        return expr

    def _parse_and(self) -> ast.Expr:
        start = self.i
        expr = self._parse_equality()
        toks = self.toks
        while self.i < self.n and toks[self.i].text == "&&":
            self.i += 1
            rhs = self._parse_equality()
            expr = ast.And(expr.line, expr.column, self._span_text(start, self.i), expr, rhs)
        return expr

    def _parse_equality(self) -> ast.Expr:
        start = self.i
        expr = self._parse_opaque_binary()
        toks = self.toks
        while self.i < self.n:
            op = toks[self.i].text
            if op != "==" and op != "!=":
                break
            self.i += 1
            rhs = self._parse_opaque_binary()
            cls = ast.Eq if op == "==" else ast.Neq
            expr = cls(expr.line, expr.column, self._span_text(start, self.i), expr, rhs)
        return expr

    def _parse_opaque_binary(self) -> ast.Expr:
        # Relational and arithmetic chains fold into one opaque tier: their
        # relative precedence never matters to the detectors.
        start = self.i
        expr = self._parse_unary()
        toks = self.toks
        while self.i < self.n:
            op = toks[self.i].text
            if op not in _CMP_OPS and op not in _ARITH_OPS:
                break
            self.i += 1
            self._parse_unary()
            expr = ast.OpaqueExpr(expr.line, expr.column, self._span_text(start, self.i))
        return expr

    def _parse_unary(self) -> ast.Expr:
        if self.i < self.n:
            tok = self.toks[self.i]
            if tok.text in _UNARY_OPS:
                start = self.i
                self.i += 1
                self._parse_unary()
                return ast.OpaqueExpr(tok.line, tok.column, self._span_text(start, self.i))
        return self._parse_postfix()

    def _parse_postfix(self) -> ast.Expr:
        start = self.i
        expr = self._parse_primary()
        toks = self.toks
        n = self.n
        while self.i < n:
            t = toks[self.i].text
            if t == ".":
                tok = self._peek(1)
                if tok is None or tok.kind not in ("identifier", "keyword"):
                    self.i += 1
                    return ast.OpaqueExpr(expr.line, expr.column, self._span_text(start, self.i))
                self.i += 2
                text = self._span_text(start, self.i)
                if isinstance(expr, ast.Identifier) and expr.name == "msg" and tok.text == "sender":
                    expr = ast.MsgSender(expr.line, expr.column, text)
                else:
                    expr = ast.Member(expr.line, expr.column, text, expr, tok.text)
            elif t == "[":
                self.i += 1
                index = self._parse_expr()
                self._expect("]", "index expression")
                expr = ast.Index(expr.line, expr.column, self._span_text(start, self.i),
                                 expr, index)
            elif t == "(":
                args = self._parse_call_args()
                expr = ast.CallExpr(expr.line, expr.column, self._span_text(start, self.i),
                                    expr, args)
            elif t == "{" and isinstance(expr, ast.Member):
                opt_start = self.i
                self._skip_balanced()
                options = self._span_text(opt_start, self.i)
                if self._text() == "(":
                    args = self._parse_call_args()
                    expr = ast.CallExpr(expr.line, expr.column, self._span_text(start, self.i),
                                        expr, args, options)
                else:
                    return ast.OpaqueExpr(expr.line, expr.column, self._span_text(start, self.i))
            else:
                return expr
        return expr

    def _parse_call_args(self) -> list[ast.Expr]:
        self._eat("(")
        args: list[ast.Expr] = []
        if self._text() == ")":
            self.i += 1
            return args
        while self.i < self.n:
            if self._text() == "{":
                opt_start = self.i
                self._skip_balanced()
                tok = self.toks[opt_start]
                args.append(ast.OpaqueExpr(tok.line, tok.column,
                                           self._span_text(opt_start, self.i)))
            else:
                args.append(self._parse_expr())
            if self._eat(","):
                continue
            break
        self._expect(")", "call arguments")
        return args

    def _parse_primary(self) -> ast.Expr:
        i = self.i
        tok = self.toks[i] if i < self.n else None
        if tok is None or tok.text in _EXPR_STOP:
            line, column = (tok.line, tok.column) if tok else (1, 1)
            return ast.OpaqueExpr(line, column, "")
        kind = tok.kind
        if kind == "identifier":
            self.i = i + 1
            return ast.Identifier(tok.line, tok.column, tok.text, tok.text)
        if tok.text == "address" and self._text(1) == "(":
            start = self.i
            self.i += 2
            inner = self._parse_expr()
            self._expect(")", "address cast")
            return ast.AddressCast(tok.line, tok.column, self._span_text(start, self.i), inner)
        if tok.text == "(":
            self.i += 1
            inner = self._parse_expr()
            self._expect(")", "parenthesized expression")
            return inner
        if tok.kind in ("number-literal", "string-literal") or tok.text in ("true", "false"):
            self.i += 1
            return ast.Literal(tok.line, tok.column, tok.text)
        if tok.kind in ("identifier", "keyword"):
            self.i += 1
            return ast.Identifier(tok.line, tok.column, tok.text, tok.text)
        self.i += 1
        return ast.OpaqueExpr(tok.line, tok.column, tok.text)
