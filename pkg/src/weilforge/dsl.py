"""A small scripting language for algebras, ideals and affine-structure checks.

    program := stmt*
    stmt    := NAME "=" expr ";"
             | "check" kind expr expr ";"
             | "scan" "truncated" bound bound ";"
             | "export" NAME STRING ";"
    expr    := "truncated" "(" args ")" | "quotient" "(" expr "," expr ")"
             | "mpow" "(" expr "," INT ")" | "ideal" "(" expr ";" poly ("," poly)* ")"
             | "ann" "(" expr "," expr ")" | NAME
    kind    := "weil" | "regular" | "aut" | "jet"
    bound   := ("m" | "l") "<=" INT

Polynomials use + - * / ^ and parentheses over the generator labels of the
algebra (``xi`` or ``xi1, xi2, ...`` for truncated algebras). ``#`` starts a
comment. The semicolon after the final statement may be omitted.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .algebra import AlgebraElement, WeilAlgebra, quotient_algebra, truncated_algebra
from .criteria import CHECKS, scan_rows_json, scan_table, scan_truncated
from .errors import WeilError
from .ideals import Ideal, annihilator, ideal_span, maximal_power
from .reporting import report_document

KINDS = ("weil", "regular", "aut", "jet")
KEYWORDS = {"check", "scan", "export"}


# ---------------------------------------------------------------------------
# diagnostics


class ScriptError(WeilError):
    def __init__(self, message: str, line: Optional[int] = None, col: Optional[int] = None):
        self.message = message
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}, col {col}: " if col is not None else f"line {line}: "
        super().__init__(where + message)

    def to_json(self) -> dict:
        return {"type": type(self).__name__, "message": self.message, "line": self.line, "column": self.col}


class ScriptSyntaxError(ScriptError):
    def __init__(self, message: str, line: int, col: int, expected: Tuple[str, ...] = ()):
        self.expected = tuple(sorted(set(expected)))
        if self.expected:
            message = f"{message}; expected one of: {', '.join(self.expected)}"
        super().__init__(message, line, col)


class ScriptNameError(ScriptError, NameError):
    pass


class ScriptTypeError(ScriptError, TypeError):
    pass


class ScriptRuntimeError(ScriptError):
    pass


# ---------------------------------------------------------------------------
# lexer


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, STRING, OP, EOF
    text: str
    line: int
    col: int

    def show(self) -> str:
        return "end of input" if self.kind == "EOF" else repr(self.text)


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<NAME>[A-Za-z_][A-Za-z0-9_]*)|(?P<INT>[0-9]+)"
    r'|(?P<STRING>"(?:[^"\\\n]|\\.)*")'
    r"|(?P<OP><=|[=;,()+\-*/^])"
)


def tokenize(text: str) -> List[Token]:
    out = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ScriptSyntaxError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(Token("EOF", "", line, pos - start + 1))
    return out


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "PolyNode"
    right: "PolyNode"


@dataclass(frozen=True)
class Neg:
    operand: "PolyNode"


@dataclass(frozen=True)
class Power:
    base: "PolyNode"
    exponent: int


PolyNode = Union[Num, Var, BinOp, Neg, Power]


@dataclass(frozen=True)
class Name:
    name: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Truncated:
    m: int
    l: int


@dataclass(frozen=True)
class Quotient:
    algebra: "Expr"
    ideal: "Expr"


@dataclass(frozen=True)
class MPow:
    algebra: "Expr"
    k: int


@dataclass(frozen=True)
class IdealGen:
    algebra: "Expr"
    polys: Tuple[PolyNode, ...]


@dataclass(frozen=True)
class Ann:
    algebra: "Expr"
    ideal: "Expr"


Expr = Union[Name, Truncated, Quotient, MPow, IdealGen, Ann]


@dataclass(frozen=True)
class Assign:
    name: str
    expr: Expr
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Check:
    kind: str
    algebra: Expr
    ideal: Expr
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Scan:
    m_max: int
    l_max: int
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Export:
    name: str
    path: str
    line: int = field(default=0, compare=False)


Statement = Union[Assign, Check, Scan, Export]


@dataclass(frozen=True)
class Program:
    statements: Tuple[Statement, ...]

    def __len__(self):
        return len(self.statements)


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, expected, what: Optional[str] = None):
        t = self.tok
        raise ScriptSyntaxError(what or f"unexpected {t.show()}", t.line, t.col, tuple(expected))

    def expect_op(self, op: str) -> Token:
        if self.tok.kind == "OP" and self.tok.text == op:
            return self.advance()
        self.fail([repr(op)])

    def expect_kind(self, kind: str, label: str) -> Token:
        if self.tok.kind == kind:
            return self.advance()
        self.fail([label])

    def is_op(self, op: str) -> bool:
        return self.tok.kind == "OP" and self.tok.text == op

    def integer(self) -> int:
        return int(self.expect_kind("INT", "integer").text)

    # statements

    def program(self) -> Program:
        stmts = []
        while self.tok.kind != "EOF":
            stmts.append(self.statement())
        return Program(tuple(stmts))

    def end_statement(self):
        if self.is_op(";"):
            self.advance()
        elif self.tok.kind != "EOF":
            self.fail(["';'"])

    def statement(self) -> Statement:
        t = self.tok
        if t.kind != "NAME":
            self.fail(["name", "'check'", "'scan'", "'export'"])
        if t.text == "check":
            self.advance()
            k = self.tok
            if k.kind != "NAME" or k.text not in KINDS:
                self.fail([repr(x) for x in KINDS])
            self.advance()
            a = self.expr()
            i = self.expr()
            self.end_statement()
            return Check(k.text, a, i, line=t.line)
        if t.text == "scan":
            self.advance()
            w = self.tok
            if w.kind != "NAME" or w.text != "truncated":
                self.fail(["'truncated'"])
            self.advance()
            bounds = {}
            for _ in range(2):
                v = self.tok
                if v.kind != "NAME" or v.text not in ("m", "l") or v.text in bounds:
                    self.fail([repr(x) for x in ("m", "l") if x not in bounds])
                self.advance()
                self.expect_op("<=")
                n = self.tok
                bounds[v.text] = self.integer()
                if bounds[v.text] < 1:
                    raise ScriptSyntaxError("scan bounds must be positive", n.line, n.col)
            self.end_statement()
            return Scan(bounds["m"], bounds["l"], line=t.line)
        if t.text == "export":
            self.advance()
            n = self.expect_kind("NAME", "name")
            s = self.expect_kind("STRING", "string")
            self.end_statement()
            return Export(n.text, _unquote(s.text), line=t.line)
        self.advance()
        if not self.is_op("="):
            self.fail(["'='"])
        self.advance()
        e = self.expr()
        self.end_statement()
        return Assign(t.text, e, line=t.line)

    # expressions

    def expr(self) -> Expr:
        t = self.tok
        if t.kind != "NAME":
            self.fail(["'truncated'", "'quotient'", "'mpow'", "'ideal'", "'ann'", "name"])
        self.advance()
        if t.text in ("truncated", "quotient", "mpow", "ideal", "ann") and self.is_op("("):
            self.advance()
            node = getattr(self, "_" + t.text)()
            self.expect_op(")")
            return node
        if t.text in KEYWORDS:
            raise ScriptSyntaxError(f"keyword {t.text!r} cannot be used as a name", t.line, t.col)
        return Name(t.text, t.line, t.col)

    def _truncated(self) -> Truncated:
        vals = {}
        for pos, key in enumerate(("m", "l")):
            if pos:
                self.expect_op(",")
            if self.tok.kind == "NAME":
                k = self.tok
                if k.text != key:
                    self.fail([repr(key)])
                self.advance()
                self.expect_op("=")
            vals[key] = self.integer()
        return Truncated(vals["m"], vals["l"])

    def _quotient(self) -> Quotient:
        a = self.expr()
        self.expect_op(",")
        return Quotient(a, self.expr())

    def _mpow(self) -> MPow:
        a = self.expr()
        self.expect_op(",")
        return MPow(a, self.integer())

    def _ideal(self) -> IdealGen:
        a = self.expr()
        self.expect_op(";")
        polys = [self.poly()]
        while self.is_op(","):
            self.advance()
            polys.append(self.poly())
        return IdealGen(a, tuple(polys))

    def _ann(self) -> Ann:
        a = self.expr()
        self.expect_op(",")
        return Ann(a, self.expr())

    # polynomials: sum := term (("+"|"-") term)*; term := unary (("*"|"/") unary)*
    # unary := "-" unary | power; power := atom ("^" INT)?

    def poly(self) -> PolyNode:
        node = self.term()
        while self.is_op("+") or self.is_op("-"):
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> PolyNode:
        node = self.unary()
        while self.is_op("*") or self.is_op("/"):
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> PolyNode:
        if self.is_op("-"):
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> PolyNode:
        base = self.atom()
        if self.is_op("^"):
            self.advance()
            return Power(base, self.integer())
        return base

    def atom(self) -> PolyNode:
        t = self.tok
        if t.kind == "INT":
            self.advance()
            return Num(int(t.text))
        if t.kind == "NAME":
            self.advance()
            return Var(t.text, t.line, t.col)
        if self.is_op("("):
            self.advance()
            node = self.poly()
            self.expect_op(")")
            return node
        self.fail(["number", "generator", "'('", "'-'"])


def _unquote(s: str) -> str:
    return json.loads(s)


# ---------------------------------------------------------------------------
# static checks: names bound before use, algebra/ideal typing

ALGEBRA, IDEAL = "algebra", "ideal"


def _expr_pos(e: Expr) -> Tuple[int, int]:
    if isinstance(e, Name):
        return e.line, e.col
    for attr in ("algebra", "ideal"):
        sub = getattr(e, attr, None)
        if sub is not None:
            return _expr_pos(sub)
    return 0, 0


def _located(e: Expr) -> Tuple[Optional[int], Optional[int]]:
    line, col = _expr_pos(e)
    return (line or None, col or None)


def _type_of(e: Expr, env: Dict[str, str]) -> str:
    if isinstance(e, Name):
        if e.name not in env:
            raise ScriptNameError(f"name {e.name!r} is not defined", e.line, e.col)
        return env[e.name]
    if isinstance(e, Truncated):
        return ALGEBRA
    if isinstance(e, Quotient):
        _expect(e.algebra, ALGEBRA, env)
        _expect(e.ideal, IDEAL, env)
        return ALGEBRA
    if isinstance(e, (MPow, IdealGen)):
        _expect(e.algebra, ALGEBRA, env)
        return IDEAL
    if isinstance(e, Ann):
        _expect(e.algebra, ALGEBRA, env)
        _expect(e.ideal, IDEAL, env)
        return IDEAL
    raise TypeError(f"unknown expression {e!r}")


def _expect(e: Expr, want: str, env: Dict[str, str]):
    got = _type_of(e, env)
    if got != want:
        raise ScriptTypeError(f"{want} expected, {got} given", *_located(e))


def check_program(prog: Program, env: Optional[Dict[str, str]] = None) -> Dict[str, str]:
    env = dict(env or {})
    for s in prog.statements:
        if isinstance(s, Assign):
            env[s.name] = _type_of(s.expr, env)
        elif isinstance(s, Check):
            _expect(s.algebra, ALGEBRA, env)
            _expect(s.ideal, IDEAL, env)
        elif isinstance(s, Export):
            if s.name not in env:
                raise ScriptNameError(f"name {s.name!r} is not defined", s.line)
    return env


def parse_program(text: str, predefined: Optional[Dict[str, str]] = None) -> Program:
    """Parse and statically check a script.

    ``predefined`` maps names bound by the caller to "algebra" or "ideal".
    """
    prog = _Parser(text).program()
    check_program(prog, predefined)
    return prog


# ---------------------------------------------------------------------------
# pretty printer

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}
_UNARY, _POWER, _ATOM = 3, 4, 5


def _prec(node: PolyNode) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return _UNARY
    if isinstance(node, Power):
        return _POWER
    return _ATOM


def format_poly(node: PolyNode) -> str:
    def wrap(child, need):
        s = format_poly(child)
        return f"({s})" if _prec(child) < need else s

    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return "-" + wrap(node.operand, _UNARY)
    if isinstance(node, Power):
        return f"{wrap(node.base, _ATOM)}^{node.exponent}"
    p = _PREC[node.op]
    sep = f" {node.op} " if p == 1 else node.op
    return wrap(node.left, p) + sep + wrap(node.right, p + 1)


def format_expr(e: Expr) -> str:
    if isinstance(e, Name):
        return e.name
    if isinstance(e, Truncated):
        return f"truncated(m={e.m}, l={e.l})"
    if isinstance(e, Quotient):
        return f"quotient({format_expr(e.algebra)}, {format_expr(e.ideal)})"
    if isinstance(e, MPow):
        return f"mpow({format_expr(e.algebra)}, {e.k})"
    if isinstance(e, IdealGen):
        return f"ideal({format_expr(e.algebra)}; {', '.join(format_poly(p) for p in e.polys)})"
    if isinstance(e, Ann):
        return f"ann({format_expr(e.algebra)}, {format_expr(e.ideal)})"
    raise TypeError(f"unknown expression {e!r}")


def format_statement(s: Statement) -> str:
    if isinstance(s, Assign):
        return f"{s.name} = {format_expr(s.expr)};"
    if isinstance(s, Check):
        return f"check {s.kind} {format_expr(s.algebra)} {format_expr(s.ideal)};"
    if isinstance(s, Scan):
        return f"scan truncated m<={s.m_max} l<={s.l_max};"
    if isinstance(s, Export):
        return f"export {s.name} {json.dumps(s.path)};"
    raise TypeError(f"unknown statement {s!r}")


def format_program(prog: Program) -> str:
    return "".join(format_statement(s) + "\n" for s in prog.statements)


# ---------------------------------------------------------------------------
# evaluation


def evaluate_poly(node: PolyNode, A: WeilAlgebra) -> AlgebraElement:
    if isinstance(node, Num):
        return A.scalar(node.value)
    if isinstance(node, Var):
        if node.name not in A.generator_names:
            known = ", ".join(A.generator_names) or "none"
            raise ScriptNameError(f"{node.name!r} is not a generator of the algebra (generators: {known})",
                                  node.line or None, node.col or None)
        return A.generator(node.name)
    if isinstance(node, Neg):
        return -evaluate_poly(node.operand, A)
    if isinstance(node, Power):
        return evaluate_poly(node.base, A) ** node.exponent
    left = evaluate_poly(node.left, A)
    right = evaluate_poly(node.right, A)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    # division only by nonzero scalars
    c = right.augmentation
    if c == 0 or right != A.scalar(c):
        raise ScriptRuntimeError("division is only allowed by a nonzero number")
    return left * A.scalar(Fraction(1) / c)


@dataclass
class ExecutionResult:
    exit_code: int
    results: List[dict]
    text: str
    error: Optional[ScriptError] = None
    scans: List[list] = field(default_factory=list)

    def document(self) -> dict:
        return report_document(self.results, self.exit_code, self.error.to_json() if self.error else None)


class Interpreter:
    def __init__(self, env: Optional[Dict[str, object]] = None, workers: int = 1):
        self.env: Dict[str, object] = dict(env or {})
        self.workers = workers

    def eval(self, e: Expr):
        if isinstance(e, Name):
            if e.name not in self.env:
                raise ScriptNameError(f"name {e.name!r} is not defined", e.line, e.col)
            return self.env[e.name]
        if isinstance(e, Truncated):
            return truncated_algebra(e.m, e.l)
        if isinstance(e, Quotient):
            A, I = self._pair(e)
            return quotient_algebra(A, I)[0]
        if isinstance(e, MPow):
            return maximal_power(self._algebra(e.algebra), e.k)
        if isinstance(e, IdealGen):
            A = self._algebra(e.algebra)
            return ideal_span(A, [evaluate_poly(p, A) for p in e.polys])
        if isinstance(e, Ann):
            A, I = self._pair(e)
            return annihilator(A, I)
        raise TypeError(f"unknown expression {e!r}")

    def _algebra(self, e: Expr) -> WeilAlgebra:
        v = self.eval(e)
        if not isinstance(v, WeilAlgebra):
            raise ScriptTypeError("algebra expected", *_located(e))
        return v

    def _ideal(self, e: Expr) -> Ideal:
        v = self.eval(e)
        if not isinstance(v, Ideal):
            raise ScriptTypeError("ideal expected", *_located(e))
        return v

    def _pair(self, e) -> Tuple[WeilAlgebra, Ideal]:
        A = self._algebra(e.algebra)
        I = self._ideal(e.ideal)
        if I.algebra != A:
            raise ScriptTypeError("ideal belongs to a different algebra", *_located(e.ideal))
        return A, I

    def run(self, prog: Program) -> ExecutionResult:
        results, text, scans = [], [], []
        failed = False
        for s in prog.statements:
            try:
                out = self._run_statement(s)
            except ScriptError as err:
                if err.line is None:
                    err = type(err)(err.message, s.line, None) if not isinstance(err, ScriptSyntaxError) else err
                return ExecutionResult(2, results, "\n".join(text), err, scans)
            except (WeilError, ValueError, ArithmeticError) as err:
                wrapped = ScriptRuntimeError(f"{type(err).__name__}: {err}", s.line)
                return ExecutionResult(2, results, "\n".join(text), wrapped, scans)
            if out is None:
                continue
            doc, rendered, ok, rows = out
            results.append(doc)
            text.append(rendered)
            if rows is not None:
                scans.append(rows)
            failed |= not ok
        return ExecutionResult(1 if failed else 0, results, "\n".join(text), None, scans)

    def _run_statement(self, s: Statement):
        if isinstance(s, Assign):
            self.env[s.name] = self.eval(s.expr)
            return None
        if isinstance(s, Check):
            A, I = self._pair(s)
            report = CHECKS[s.kind](A, I)
            doc = {"statement": "check", "line": s.line, "check": s.kind, "report": report.to_json()}
            return doc, report.render(), report.holds, None
        if isinstance(s, Scan):
            rows = scan_truncated(s.m_max, s.l_max, workers=self.workers)
            bad = sum(not r.agree for r in rows)
            doc = {"statement": "scan", "line": s.line, "m_max": s.m_max, "l_max": s.l_max,
                   "rows": scan_rows_json(rows), "disagreements": bad}
            rendered = scan_table(rows) + f"\n{bad} disagreement(s) with the predicted thresholds"
            return doc, rendered, bad == 0, rows
        if isinstance(s, Export):
            if s.name not in self.env:
                raise ScriptNameError(f"name {s.name!r} is not defined", s.line)
            v = self.env[s.name]
            kind = "algebra" if isinstance(v, WeilAlgebra) else "ideal"
            with open(s.path, "w", encoding="utf-8") as fh:
                json.dump(v.to_json(), fh, indent=2)
            doc = {"statement": "export", "line": s.line, "name": s.name, "path": s.path, "value_kind": kind}
            return doc, f"exported {kind} {s.name} to {s.path}", True, None
        raise TypeError(f"unknown statement {s!r}")


def execute(prog: Program, env: Optional[Dict[str, object]] = None, workers: int = 1) -> ExecutionResult:
    return Interpreter(env, workers).run(prog)


def summary_table(result: ExecutionResult) -> str:
    """One aligned row per check statement."""
    rows = [("line", "check", "algebra", "ideal", "result", "witness")]
    for doc in result.results:
        if doc["statement"] != "check":
            continue
        rep = doc["report"]
        witness = ""
        for c in rep["hypotheses"] + rep["criteria"]:
            if not c["holds"] and c["witness"]:
                w = c["witness"]
                witness = w.get("product") or w.get("value") or w.get("element") or w.get("derivation", "")
                break
        rows.append((str(doc["line"]), doc["check"], rep["algebra"], rep["ideal"],
                     "holds" if rep["holds"] else "FAILS", witness))
    if len(rows) == 1:
        return ""
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)
