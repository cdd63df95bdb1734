"""A small identity language for the weighted Euler family.

One identity per line: `forall n in 0..8 : expr = expr`, with nodes for
literals, w, x, E(index[, x+shift]), Ek(order, index[, x+shift]),
binom(i, j), sum(i = lo..hi, body), +, -, * and ^.  Index expressions are
integer-linear in the bound variables; there is no division operator
(rational constants are written as literals like 1/2).  Both sides evaluate
to polynomials in x over Q(w) and are compared in canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .euler import EulerTable
from .ratfunc import QW, W, binomial
from .umbral import XPolynomial

KEYWORDS = {"forall", "in", "sum", "binom", "E", "Ek", "w", "x"}


class DslParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"syntax error at {line}:{column}, {message}")
        self.line = line
        self.column = column
        self.reason = message


class DslEvalError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Lexer


@dataclass(frozen=True)
class Token:
    kind: str          # keyword, "ident", "int", a symbol, or "end"
    text: str
    line: int
    column: int


_SYMBOLS = ("..", "+", "-", "*", "/", "^", "(", ")", ",", ":", "=")


def tokenize(text: str, line: int = 1) -> list[Token]:
    tokens = []
    col = 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch == "#":
            break
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            tokens.append(Token(word if word in KEYWORDS else "ident", word, line, col))
            col += j - i
            i = j
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token(sym, sym, line, col))
                col += len(sym)
                i += len(sym)
                break
        else:
            raise DslParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("end", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class IndexExpr:
    """Integer-linear form: a tuple of (coefficient, variable-or-None) terms."""

    terms: tuple

    def evaluate(self, env: dict) -> int:
        total = 0
        for coef, var in self.terms:
            total += coef if var is None else coef * env[var]
        return total

    def render(self) -> str:
        parts = []
        for coef, var in self.terms:
            mag = abs(coef)
            if var is None:
                body = str(mag)
            else:
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(body if coef >= 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coef >= 0 else f"- {body}")
        return " ".join(parts) if parts else "0"

    def literal_value(self) -> Optional[int]:
        if len(self.terms) == 1 and self.terms[0][1] is None:
            return self.terms[0][0]
        return None


@dataclass(frozen=True)
class Lit:
    value: Fraction

    def render(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class WSym:
    def render(self) -> str:
        return "w"


@dataclass(frozen=True)
class XSym:
    def render(self) -> str:
        return "x"


def _render_xarg(xarg: Optional[int]) -> str:
    if xarg is None:
        return ""
    if xarg == 0:
        return ", x"
    sign = "+" if xarg > 0 else "-"
    return f", x {sign} {abs(xarg)}"


@dataclass(frozen=True)
class ECall:
    index: IndexExpr
    xarg: Optional[int]            # None: the number; k: the polynomial at x+k

    def render(self) -> str:
        return f"E({self.index.render()}{_render_xarg(self.xarg)})"


@dataclass(frozen=True)
class EkCall:
    order: IndexExpr
    index: IndexExpr
    xarg: Optional[int]

    def render(self) -> str:
        return f"Ek({self.order.render()}, {self.index.render()}{_render_xarg(self.xarg)})"


@dataclass(frozen=True)
class Binom:
    top: IndexExpr
    bottom: IndexExpr

    def render(self) -> str:
        return f"binom({self.top.render()}, {self.bottom.render()})"


@dataclass(frozen=True)
class SumExpr:
    var: str
    lo: IndexExpr
    hi: IndexExpr
    body: object

    def render(self) -> str:
        return f"sum({self.var} = {self.lo.render()}..{self.hi.render()}, {render_expr(self.body)})"


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class PowExpr:
    base: object
    exponent: IndexExpr


@dataclass(frozen=True)
class Identity:
    var: str
    lo: int
    hi: int
    lhs: object
    rhs: object
    source: str = field(compare=False, default="")


def _precedence(node) -> int:
    if isinstance(node, (Add, Sub)):
        return 1
    if isinstance(node, Mul):
        return 2
    if isinstance(node, PowExpr):
        return 3
    return 4


def render_expr(node) -> str:
    if isinstance(node, (Add, Sub)):
        op = "+" if isinstance(node, Add) else "-"
        left = render_expr(node.left)
        right = render_expr(node.right)
        if _precedence(node.right) <= 1:
            right = f"({right})"
        return f"{left} {op} {right}"
    if isinstance(node, Mul):
        left = render_expr(node.left)
        right = render_expr(node.right)
        if _precedence(node.left) < 2:
            left = f"({left})"
        if _precedence(node.right) <= 2:
            right = f"({right})"
        return f"{left}*{right}"
    if isinstance(node, PowExpr):
        base = render_expr(node.base)
        if not _is_tight_atom(node.base):
            base = f"({base})"
        exp = node.exponent
        lit = exp.literal_value()
        bare_var = len(exp.terms) == 1 and exp.terms[0][1] is not None and exp.terms[0][0] == 1
        text = exp.render()
        if not (bare_var or (lit is not None and lit >= 0)):
            text = f"({text})"
        return f"{base}^{text}"
    return node.render()


def _is_tight_atom(node) -> bool:
    if isinstance(node, Lit):
        return node.value.denominator == 1 and node.value >= 0
    return isinstance(node, (WSym, XSym, ECall, EkCall, Binom, SumExpr))


def render_identity(ast: Identity) -> str:
    return (f"forall {ast.var} in {ast.lo}..{ast.hi} : "
            f"{render_expr(ast.lhs)} = {render_expr(ast.rhs)}")


# ---------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.bound: list[str] = []

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _fail(self, expected: str) -> DslParseError:
        tok = self.current
        found = "end of input" if tok.kind == "end" else f"`{tok.text}`"
        return DslParseError(f"expected {expected} but found {found}", tok.line, tok.column)

    def expect(self, kind: str, expected: Optional[str] = None) -> Token:
        tok = self.current
        if tok.kind != kind:
            raise self._fail(expected or f"`{kind}`")
        self.pos += 1
        return tok

    def accept(self, kind: str) -> Optional[Token]:
        if self.current.kind == kind:
            tok = self.current
            self.pos += 1
            return tok
        return None

    # identity := "forall" IDENT "in" INT ".." INT ":" expr "=" expr
    def identity(self, source: str) -> Identity:
        self.expect("forall", "`forall`")
        var = self.expect("ident", "an index variable").text
        self.bound.append(var)
        self.expect("in", "`in`")
        lo = int(self.expect("int", "an integer").text)
        self.expect("..", "`..`")
        hi_tok = self.expect("int", "an integer")
        hi = int(hi_tok.text)
        if lo > hi:
            raise DslParseError(f"empty range {lo}..{hi}", hi_tok.line, hi_tok.column)
        self.expect(":", "`:`")
        lhs = self.expr()
        self.expect("=", "`=`")
        rhs = self.expr()
        self.expect("end", "end of identity")
        return Identity(var, lo, hi, lhs, rhs, source)

    def expr(self):
        node = self.term()
        while self.current.kind in ("+", "-"):
            op = self.current.kind
            self.pos += 1
            right = self.term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def term(self):
        node = self.power()
        while self.accept("*"):
            node = Mul(node, self.power())
        return node

    def power(self):
        base = self.atom()
        if self.accept("^"):
            exp = self.exponent()
            value = exp.literal_value()
            if value is not None and value < 0:
                tok = self.tokens[self.pos - 1]
                raise DslParseError("negative literal exponent", tok.line, tok.column)
            return PowExpr(base, exp)
        return base

    def exponent(self) -> IndexExpr:
        if self.accept("("):
            idx = self.index_expr()
            self.expect(")", "`)`")
            return idx
        negative = bool(self.accept("-"))
        if self.current.kind == "int":
            value = int(self.expect("int").text)
            return IndexExpr(((-value if negative else value, None),))
        if negative:
            raise self._fail("an integer")
        if self.current.kind == "ident":
            return IndexExpr(((1, self._bound_var()),))
        raise self._fail("an exponent (integer, variable, or parenthesized index)")

    def atom(self):
        tok = self.current
        if tok.kind == "int" or (tok.kind == "-" and self.tokens[self.pos + 1].kind == "int"):
            return self.literal()
        if tok.kind == "w":
            self.pos += 1
            return WSym()
        if tok.kind == "x":
            self.pos += 1
            return XSym()
        if tok.kind == "E":
            self.pos += 1
            return self.e_call()
        if tok.kind == "Ek":
            self.pos += 1
            return self.ek_call()
        if tok.kind == "binom":
            self.pos += 1
            self.expect("(", "`(`")
            top = self.index_expr()
            self.expect(",", "`,`")
            bottom = self.index_expr()
            self.expect(")", "`)`")
            return Binom(top, bottom)
        if tok.kind == "sum":
            self.pos += 1
            return self.sum_expr()
        if tok.kind == "(":
            self.pos += 1
            node = self.expr()
            self.expect(")", "`)`")
            return node
        if tok.kind == "ident":
            if tok.text in self.bound:
                raise DslParseError(
                    f"index variable `{tok.text}` is only valid inside E, Ek, binom,"
                    " sum bounds or exponents",
                    tok.line,
                    tok.column,
                )
            raise DslParseError(f"unbound variable `{tok.text}`", tok.line, tok.column)
        raise self._fail("an expression")

    def literal(self) -> Lit:
        negative = bool(self.accept("-"))
        num = int(self.expect("int", "an integer").text)
        if self.accept("/"):
            den_tok = self.expect("int", "an integer denominator")
            den = int(den_tok.text)
            if den == 0:
                raise DslParseError("zero denominator", den_tok.line, den_tok.column)
            value = Fraction(num, den)
        else:
            value = Fraction(num)
        return Lit(-value if negative else value)

    def e_call(self) -> ECall:
        self.expect("(", "`(`")
        index = self.index_expr()
        xarg = self._optional_xarg()
        return ECall(index, xarg)

    def ek_call(self) -> EkCall:
        self.expect("(", "`(`")
        order = self.index_expr()
        self.expect(",", "`,` (order then index)")
        index = self.index_expr()
        xarg = self._optional_xarg()
        return EkCall(order, index, xarg)

    def _optional_xarg(self) -> Optional[int]:
        if self.accept(")"):
            return None
        if not self.accept(","):
            raise self._fail("`,` or `)`")
        self.expect("x", "`x`")
        shift = 0
        if self.current.kind in ("+", "-"):
            sign = 1 if self.current.kind == "+" else -1
            self.pos += 1
            shift = sign * int(self.expect("int", "an integer shift").text)
        self.expect(")", "`)`")
        return shift

    def sum_expr(self) -> SumExpr:
        self.expect("(", "`(`")
        var_tok = self.expect("ident", "a summation variable")
        if var_tok.text in self.bound:
            raise DslParseError(f"variable `{var_tok.text}` is already bound",
                                var_tok.line, var_tok.column)
        self.expect("=", "`=`")
        lo = self.index_expr()
        self.expect("..", "`..`")
        self.bound.append(var_tok.text)
        hi = self.index_expr()
        self.expect(",", "`,`")
        body = self.expr()
        self.expect(")", "`)`")
        self.bound.pop()
        return SumExpr(var_tok.text, lo, hi, body)

    # index := ["-"] idx_term (("+"|"-") idx_term)*
    # idx_term := INT ["*" IDENT] | IDENT
    def index_expr(self) -> IndexExpr:
        terms = []
        sign = -1 if self.accept("-") else 1
        terms.append(self._index_term(sign))
        while self.current.kind in ("+", "-"):
            sign = 1 if self.current.kind == "+" else -1
            self.pos += 1
            terms.append(self._index_term(sign))
        return IndexExpr(tuple(terms))

    def _index_term(self, sign: int):
        if self.current.kind == "int":
            coef = int(self.expect("int").text)
            if self.accept("*"):
                return (sign * coef, self._bound_var())
            return (sign * coef, None)
        if self.current.kind == "ident":
            return (sign, self._bound_var())
        raise self._fail("an integer or index variable")

    def _bound_var(self) -> str:
        tok = self.expect("ident", "an index variable")
        if tok.text not in self.bound:
            raise DslParseError(f"unbound variable `{tok.text}`", tok.line, tok.column)
        return tok.text


def parse_identity(text: str, line: int = 1) -> Identity:
    return _Parser(tokenize(text, line)).identity(text.strip())


# ---------------------------------------------------------------------------
# Evaluation


class TableContext:
    """Euler tables by order, grown on demand unless auto_extend is off."""

    def __init__(self, max_index: int, max_order: int = 1, auto_extend: bool = True):
        self.auto_extend = auto_extend
        self.tables: dict[int, EulerTable] = {
            k: EulerTable.build(max_index + 1, k) for k in range(1, max_order + 1)
        }

    def table(self, order: int, index: int) -> EulerTable:
        if order < 1:
            raise DslEvalError(f"order must be at least 1, got {order}")
        tab = self.tables.get(order)
        if tab is None or tab.count <= index:
            if not self.auto_extend:
                have = 0 if tab is None else tab.count
                raise DslEvalError(
                    f"order {order} not precomputed up to index {index} (have {have})"
                )
            count = max(index + 1, tab.count if tab else 0)
            tab = EulerTable.build(count, order)
            self.tables[order] = tab
        return tab

    def number(self, order: int, index: int):
        return self.table(order, index).numbers[index]

    def poly(self, order: int, index: int) -> XPolynomial:
        return self.table(order, index).polys[index]


def _index_value(idx: IndexExpr, env: dict, what: str) -> int:
    value = idx.evaluate(env)
    if value < 0:
        bindings = ", ".join(f"{k}={v}" for k, v in env.items())
        raise DslEvalError(f"negative {what} {idx.render()} = {value} at {bindings}")
    return value


def evaluate_expr(node, env: dict, ctx: TableContext) -> XPolynomial:
    """Exact polynomial in x over Q(w); env binds every index variable."""
    if isinstance(node, Lit):
        return XPolynomial(QW, (QW.of(node.value),))
    if isinstance(node, WSym):
        return XPolynomial(QW, (W,))
    if isinstance(node, XSym):
        return XPolynomial.variable(QW)
    if isinstance(node, ECall):
        index = _index_value(node.index, env, "index")
        if node.xarg is None:
            return XPolynomial(QW, (ctx.number(1, index),))
        return ctx.poly(1, index).shifted(node.xarg)
    if isinstance(node, EkCall):
        order = node.order.evaluate(env)
        index = _index_value(node.index, env, "index")
        if node.xarg is None:
            return XPolynomial(QW, (ctx.number(order, index),))
        return ctx.poly(order, index).shifted(node.xarg)
    if isinstance(node, Binom):
        n = node.top.evaluate(env)
        k = node.bottom.evaluate(env)
        return XPolynomial(QW, (QW.of(binomial(n, k)),))
    if isinstance(node, SumExpr):
        lo = node.lo.evaluate(env)
        hi = node.hi.evaluate(env)
        acc = XPolynomial.zero(QW)
        inner = dict(env)
        for v in range(lo, hi + 1):
            inner[node.var] = v
            acc = acc + evaluate_expr(node.body, inner, ctx)
        return acc
    if isinstance(node, Add):
        return evaluate_expr(node.left, env, ctx) + evaluate_expr(node.right, env, ctx)
    if isinstance(node, Sub):
        return evaluate_expr(node.left, env, ctx) - evaluate_expr(node.right, env, ctx)
    if isinstance(node, Mul):
        return evaluate_expr(node.left, env, ctx) * evaluate_expr(node.right, env, ctx)
    if isinstance(node, PowExpr):
        exp = _index_value(node.exponent, env, "exponent")
        return evaluate_expr(node.base, env, ctx) ** exp
    raise DslEvalError(f"unknown node {node!r}")


# ---------------------------------------------------------------------------
# Checking


@dataclass
class Verdict:
    status: str                    # "pass" | "fail" | "error"
    source: str = ""
    at: Optional[int] = None
    difference: Optional[str] = None
    message: Optional[str] = None
    location: Optional[tuple] = None

    def to_json(self) -> dict:
        out = {"source": self.source, "status": self.status}
        if self.at is not None:
            out["at"] = self.at
        if self.difference is not None:
            out["difference"] = self.difference
        if self.message is not None:
            out["message"] = self.message
        if self.location is not None:
            out["location"] = {"line": self.location[0], "column": self.location[1]}
        return out

    def render_text(self) -> str:
        if self.status == "pass":
            return f"PASS  {self.source}"
        if self.status == "fail":
            return f"FAIL  {self.source}  at {self.at}: difference {self.difference}"
        return f"ERROR {self.source}  {self.message}"


def check_identity(ast: Identity, ctx: TableContext, max_n: Optional[int] = None) -> Verdict:
    """Exact check over the declared range, optionally capped at max_n."""
    hi = ast.hi if max_n is None else min(ast.hi, max_n)
    for n in range(ast.lo, hi + 1):
        env = {ast.var: n}
        try:
            diff = evaluate_expr(ast.lhs, env, ctx) - evaluate_expr(ast.rhs, env, ctx)
        except DslEvalError as exc:
            return Verdict("error", ast.source, at=n, message=str(exc))
        if not diff.is_zero():
            return Verdict("fail", ast.source, at=n, difference=str(diff))
    return Verdict("pass", ast.source)


def check_corpus(text: str, ctx: TableContext, max_n: Optional[int] = None) -> list[Verdict]:
    """One verdict per identity line; parse failures become error verdicts."""
    verdicts = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        try:
            ast = parse_identity(raw, line=lineno)
        except DslParseError as exc:
            verdicts.append(Verdict("error", stripped, message=str(exc),
                                    location=(exc.line, exc.column)))
            continue
        verdicts.append(check_identity(ast, ctx, max_n=max_n))
    return verdicts
