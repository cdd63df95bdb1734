"""Exact arithmetic: rationals, polynomials in the weight w, and the field Q(w).

Scalars are ``fractions.Fraction`` throughout.  ``WRational`` keeps a unique
canonical form (gcd-reduced, monic denominator), so ``==`` on two values
decides equality in the field Q(w).
"""

from __future__ import annotations

import math
from fractions import Fraction


def rational(numerator: int, denominator: int = 1) -> Fraction:
    """Canonical reduced fraction; the sign lives on the numerator."""
    if denominator == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(numerator, denominator)


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(n: int, parts) -> int:
    """n! / (i_1! ... i_m!) when the parts are nonnegative and sum to n, else 0."""
    parts = tuple(parts)
    if any(i < 0 for i in parts) or sum(parts) != n:
        return 0
    out = math.factorial(n)
    for i in parts:
        out //= math.factorial(i)
    return out


# ---------------------------------------------------------------------------
# Polynomials in w over Q


def _strip(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class WPolynomial:
    """Dense polynomial in the weight w with exact rational coefficients.

    The zero polynomial has an empty coefficient tuple; otherwise the last
    coefficient is nonzero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _strip([Fraction(c) for c in coeffs])

    @classmethod
    def promote(cls, value) -> "WPolynomial":
        if isinstance(value, WPolynomial):
            return value
        if isinstance(value, (int, Fraction)):
            return cls((value,))
        raise TypeError(f"cannot promote {type(value).__name__} to WPolynomial")

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (Fraction(1),)

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = WPolynomial.promote(other)
        if not isinstance(other, WPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self) -> "WPolynomial":
        return WPolynomial([-c for c in self.coeffs])

    def __add__(self, other) -> "WPolynomial":
        other = WPolynomial.promote(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return WPolynomial(out)

    __radd__ = __add__

    def __sub__(self, other) -> "WPolynomial":
        return self + (-WPolynomial.promote(other))

    def __rsub__(self, other) -> "WPolynomial":
        return (-self) + WPolynomial.promote(other)

    def __mul__(self, other) -> "WPolynomial":
        other = WPolynomial.promote(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return WPolynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return WPolynomial(out)

    __rmul__ = __mul__

    def scale(self, c: Fraction) -> "WPolynomial":
        c = Fraction(c)
        if c == 0:
            return WPolynomial()
        return WPolynomial([a * c for a in self.coeffs])

    def __pow__(self, n: int) -> "WPolynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        out = WPolynomial((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "WPolynomial") -> tuple["WPolynomial", "WPolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return WPolynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        inv_lead = 1 / other.leading
        for i in range(dq, -1, -1):
            c = rem[i + other.degree] * inv_lead
            if c:
                quot[i] = c
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return WPolynomial(quot), WPolynomial(rem)

    def divexact(self, other: "WPolynomial") -> "WPolynomial":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError(f"inexact polynomial division by {other}")
        return q

    def eval_at(self, w0) -> Fraction:
        w0 = Fraction(w0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * w0 + c
        return acc

    def __str__(self) -> str:
        return poly_text(self.coeffs)

    def __repr__(self) -> str:
        return f"WPolynomial({list(self.coeffs)!r})"


def poly_text(coeffs, var: str = "w") -> str:
    """Render descending, e.g. ``w^2 - 4*w + 1``."""
    if not coeffs:
        return "0"
    parts: list[str] = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            v = var if k == 1 else f"{var}^{k}"
            body = v if mag == 1 else f"{mag}*{v}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


# gcd over Q[w] is done on primitive integer polynomials to keep the
# intermediate coefficients small (primitive pseudo-remainder sequence).


def _int_primitive(coeffs: list[int]) -> list[int]:
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
    if g == 0:
        return coeffs
    if coeffs[-1] < 0:
        g = -g
    return [c // g for c in coeffs]


def _to_int_primitive(p: WPolynomial) -> list[int]:
    if p.is_zero():
        return []
    den_lcm = math.lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den_lcm) for c in p.coeffs]
    return _int_primitive(ints)


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    # pseudo-remainder of a by b (b nonzero, ints, little-endian)
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(r) - 1 >= db and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < db:
            break
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j, bc in enumerate(b):
            r[shift + j] -= lr * bc
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return r


def poly_gcd(a: WPolynomial, b: WPolynomial) -> WPolynomial:
    """Monic gcd in Q[w]."""
    if a.is_zero() and b.is_zero():
        return WPolynomial()
    A, B = _to_int_primitive(a), _to_int_primitive(b)
    while B:
        A, B = B, _int_primitive(_int_prem(A, B))
    lead = Fraction(A[-1])
    return WPolynomial([Fraction(c) / lead for c in A])


def _poly_content(p: WPolynomial) -> Fraction:
    """Rational content carrying the sign of the leading coefficient."""
    if p.is_zero():
        return Fraction(0)
    num_gcd = 0
    den_lcm = 1
    for c in p.coeffs:
        num_gcd = math.gcd(num_gcd, c.numerator)
        den_lcm = math.lcm(den_lcm, c.denominator)
    content = Fraction(num_gcd, den_lcm)
    return -content if p.leading < 0 else content


# cached coefficient rows of (1 + w)^m, used both for fast reduction and for
# the factored denominator rendering
_ONE_PLUS_W_ROWS: dict[int, tuple[Fraction, ...]] = {}


def _one_plus_w_row(m: int) -> tuple[Fraction, ...]:
    row = _ONE_PLUS_W_ROWS.get(m)
    if row is None:
        row = tuple(Fraction(math.comb(m, i)) for i in range(m + 1))
        _ONE_PLUS_W_ROWS[m] = row
    return row


def one_plus_w_pow(m: int) -> WPolynomial:
    return WPolynomial(_one_plus_w_row(m))


def _as_one_plus_w_power(p: WPolynomial) -> int | None:
    """m such that p == (1 + w)^m with m >= 1, else None."""
    m = p.degree
    if m < 1 or p.coeffs[0] != 1 or p.leading != 1:
        return None
    return m if p.coeffs == _one_plus_w_row(m) else None


_W_PLUS_ONE = WPolynomial((1, 1))


class WRational:
    """Element of Q(w) in canonical form.

    num/den are coprime in Q[w] and den is monic, so structural equality of
    the coefficient tuples is equality in the field.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        num = WPolynomial.promote(num)
        den = WPolynomial.promote(den)
        if den.is_zero():
            raise ZeroDivisionError("division by zero")
        if num.is_zero():
            self.num, self.den = WPolynomial(), WPolynomial((1,))
            return
        if den.degree == 0:
            if den.leading != 1:
                num = num.scale(1 / den.leading)
            self.num, self.den = num, WPolynomial((1,))
            return
        m = _as_one_plus_w_power(den)
        if m is not None:
            # hot path: strip shared (1 + w) factors by synthetic division
            while m > 0 and num.eval_at(-1) == 0:
                num = num.divexact(_W_PLUS_ONE)
                m -= 1
            self.num = num
            self.den = one_plus_w_pow(m) if m else WPolynomial((1,))
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.divexact(g)
            den = den.divexact(g)
        if den.leading != 1:
            num = num.scale(1 / den.leading)
            den = den.scale(1 / den.leading)
        self.num, self.den = num, den

    # -- constructors -------------------------------------------------

    @classmethod
    def promote(cls, value) -> "WRational":
        if isinstance(value, WRational):
            return value
        if isinstance(value, (int, Fraction, WPolynomial)):
            return cls(value)
        raise TypeError(f"cannot promote {type(value).__name__} to WRational")

    @classmethod
    def parse(cls, text: str) -> "WRational":
        return _parse_wrational(text)

    # -- predicates and accessors -------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        try:
            other = WRational.promote(other)
        except TypeError:
            return NotImplemented
        return self.num.coeffs == other.num.coeffs and self.den.coeffs == other.den.coeffs

    def __hash__(self):
        return hash((self.num.coeffs, self.den.coeffs))

    # -- field operations ----------------------------------------------

    def __add__(self, other) -> "WRational":
        try:
            other = WRational.promote(other)
        except TypeError:
            return NotImplemented
        return WRational(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "WRational":
        out = object.__new__(WRational)
        out.num, out.den = -self.num, self.den
        return out

    def __sub__(self, other) -> "WRational":
        try:
            other = WRational.promote(other)
        except TypeError:
            return NotImplemented
        return WRational(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other) -> "WRational":
        return (-self) + other

    def __mul__(self, other) -> "WRational":
        try:
            other = WRational.promote(other)
        except TypeError:
            return NotImplemented
        return WRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "WRational":
        try:
            other = WRational.promote(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        return WRational(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "WRational":
        return WRational.promote(other) / self

    def __pow__(self, n: int) -> "WRational":
        if n < 0:
            return (WRational(1) / self) ** (-n)
        out = WRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def eval_at(self, w0) -> Fraction:
        """Exact value at w = w0; raises on a pole."""
        w0 = Fraction(w0)
        d = self.den.eval_at(w0)
        if d == 0:
            raise ValueError(f"pole at w = {w0}: denominator {self.den} vanishes")
        return self.num.eval_at(w0) / d

    # -- rendering ------------------------------------------------------

    def __str__(self) -> str:
        if self.num.is_zero():
            return "0"
        # fold the numerator content's denominator into the printed one,
        # so w/2 renders as w/2 rather than 1/2*w
        q = _poly_content(self.num).denominator
        num_text = _numerator_text(
            self.num.scale(q), parenthesize_sums=q > 1 or not self.den.is_one()
        )
        if self.den.is_one():
            return num_text if q == 1 else f"{num_text}/{q}"
        den_text = _denominator_text(self.den)
        if q > 1:
            den_text = f"({q}*{den_text})"
        return f"{num_text}/{den_text}"

    def __repr__(self) -> str:
        return f"WRational({str(self)!r})"

    def latex(self) -> str:
        num = latex_poly(self.num.coeffs)
        if self.den.is_one():
            return num
        m = _as_one_plus_w_power(self.den)
        den = f"(1 + w)^{{{m}}}" if m and m > 1 else ("(1 + w)" if m else latex_poly(self.den.coeffs))
        return f"\\frac{{{num}}}{{{den}}}"


def latex_poly(coeffs, var: str = "w") -> str:
    if not coeffs:
        return "0"
    parts: list[str] = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        mag_tex = str(mag.numerator) if mag.denominator == 1 else f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}"
        if k == 0:
            body = mag_tex
        else:
            v = var if k == 1 else f"{var}^{{{k}}}"
            body = v if mag == 1 else f"{mag_tex} {v}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def _numerator_text(num: WPolynomial, parenthesize_sums: bool) -> str:
    # factored form: content * w^m * primitive, e.g. 2*w*(w - 1)
    content = _poly_content(num)
    reduced = num.scale(1 / content)
    m = 0
    while reduced.coeffs and reduced.coeffs[0] == 0:
        reduced = WPolynomial(reduced.coeffs[1:])
        m += 1
    factors: list[str] = []
    mag = abs(content)
    if m == 0 and reduced.is_one():
        factors.append(str(mag))
    elif mag != 1:
        factors.append(str(mag))
    if m >= 1:
        factors.append("w" if m == 1 else f"w^{m}")
    if not reduced.is_one():
        body = poly_text(reduced.coeffs)
        if len([c for c in reduced.coeffs if c]) > 1:
            if factors or parenthesize_sums or content < 0:
                body = f"({body})"
        factors.append(body)
    text = "*".join(factors)
    return f"-{text}" if content < 0 else text


def _denominator_text(den: WPolynomial) -> str:
    m = _as_one_plus_w_power(den)
    if m is not None:
        return "(1 + w)" if m == 1 else f"(1 + w)^{m}"
    if len([c for c in den.coeffs if c]) == 1:
        return poly_text(den.coeffs)
    return f"({poly_text(den.coeffs)})"


# ---------------------------------------------------------------------------
# Parser for the canonical text form (round-trips everything rendered above)


class _Tok:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind, value, pos):
        self.kind, self.value, self.pos = kind, value, pos


def _lex_wrational(text: str) -> list[_Tok]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", int(text[i:j]), i))
            i = j
        elif ch == "w":
            toks.append(_Tok("w", "w", i))
            i += 1
        elif ch in "+-*/^()":
            toks.append(_Tok(ch, ch, i))
            i += 1
        else:
            raise ValueError(f"unexpected character {ch!r} at position {i} in {text!r}")
    toks.append(_Tok("end", None, n))
    return toks


class _WRatParser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        t = self.toks[self.i]
        if kind is not None and t.kind != kind:
            raise ValueError(f"expected {kind!r}, found {t.kind!r} at position {t.pos}")
        self.i += 1
        return t

    def expr(self) -> WRational:
        acc = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> WRational:
        acc = self.unary()
        while self.peek().kind in ("*", "/"):
            op = self.take().kind
            rhs = self.unary()
            acc = acc * rhs if op == "*" else acc / rhs
        return acc

    def unary(self) -> WRational:
        if self.peek().kind == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> WRational:
        base = self.atom()
        if self.peek().kind == "^":
            self.take()
            exp = self.take("int").value
            return base ** exp
        return base

    def atom(self) -> WRational:
        t = self.peek()
        if t.kind == "int":
            self.take()
            return WRational(t.value)
        if t.kind == "w":
            self.take()
            return WRational(WPolynomial((0, 1)))
        if t.kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        raise ValueError(f"unexpected token {t.kind!r} at position {t.pos}")


def _parse_wrational(text: str) -> WRational:
    parser = _WRatParser(_lex_wrational(text))
    out = parser.expr()
    parser.take("end")
    return out


W = WRational(WPolynomial((0, 1)))


# ---------------------------------------------------------------------------
# Coefficient-field adapters shared by the series / polynomial layers


class RationalField:
    """Plain rationals Q (elements are fractions.Fraction)."""

    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def of(value) -> Fraction:
        if isinstance(value, WRational):
            if not value.is_polynomial() or value.num.degree > 0:
                raise ValueError(f"{value} is not a rational constant")
            return value.num.eval_at(0)
        return Fraction(value)

    @staticmethod
    def parse(text: str) -> Fraction:
        return Fraction(text)

    @staticmethod
    def render(value) -> str:
        return str(value)

    @staticmethod
    def latex(value: Fraction) -> str:
        if value.denominator == 1:
            return str(value.numerator)
        sign = "-" if value < 0 else ""
        return f"{sign}\\frac{{{abs(value.numerator)}}}{{{value.denominator}}}"


class WRationalField:
    """The rational-function field Q(w)."""

    name = "Q(w)"
    zero = WRational(0)
    one = WRational(1)

    @staticmethod
    def of(value) -> WRational:
        return WRational.promote(value)

    @staticmethod
    def parse(text: str) -> WRational:
        return WRational.parse(text)

    @staticmethod
    def render(value) -> str:
        return str(value)

    @staticmethod
    def latex(value: WRational) -> str:
        return value.latex()


QQ = RationalField()
QW = WRationalField()
