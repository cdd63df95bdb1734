"""The umbral algebra: series acting as linear functionals on polynomials.

The pairing realizes <t^k | x^n> = n! delta_{n,k}; a series f with ordinary
coefficients c_k pairs with p as sum_j p_j j! c_j, and acts as the operator
sum_k c_k d^k/dx^k.  Appell and Sheffer bases are produced from these two
primitives.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Sequence

from .series import Series


class XPolynomial:
    """Polynomial in x over a coefficient field, trailing zeros stripped."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        cs = [field.of(c) for c in coeffs]
        while cs and cs[-1] == field.zero:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field) -> "XPolynomial":
        return cls(field, ())

    @classmethod
    def monomial(cls, field, n: int, coeff=1) -> "XPolynomial":
        return cls(field, [field.zero] * n + [field.of(coeff)])

    @classmethod
    def variable(cls, field) -> "XPolynomial":
        return cls(field, (field.zero, field.one))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial sits at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, j: int):
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return self.field.zero

    def __eq__(self, other) -> bool:
        if isinstance(other, XPolynomial):
            return self.coeffs == other.coeffs
        try:
            other = self.field.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        if other == self.field.zero:
            return self.is_zero()
        return self.coeffs == (other,)

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other) -> "XPolynomial":
        other = self._promote(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return XPolynomial(self.field, out)

    __radd__ = __add__

    def __neg__(self) -> "XPolynomial":
        return XPolynomial(self.field, [-c for c in self.coeffs])

    def __sub__(self, other) -> "XPolynomial":
        return self + (-self._promote(other))

    def __rsub__(self, other) -> "XPolynomial":
        return (-self) + self._promote(other)

    def __mul__(self, other) -> "XPolynomial":
        if not isinstance(other, XPolynomial):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return XPolynomial.zero(self.field)
        zero = self.field.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca != zero:
                for j, cb in enumerate(b):
                    if cb != zero:
                        out[i + j] = out[i + j] + ca * cb
        return XPolynomial(self.field, out)

    def __rmul__(self, other) -> "XPolynomial":
        return self.scale(other)

    def scale(self, c) -> "XPolynomial":
        c = self.field.of(c)
        return XPolynomial(self.field, [a * c for a in self.coeffs])

    def __pow__(self, n: int) -> "XPolynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        out = XPolynomial(self.field, (self.field.one,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def _promote(self, other) -> "XPolynomial":
        if isinstance(other, XPolynomial):
            return other
        return XPolynomial(self.field, (self.field.of(other),))

    def derivative(self) -> "XPolynomial":
        return XPolynomial(self.field, [(j + 1) * self.coeffs[j + 1] for j in range(len(self.coeffs) - 1)])

    def eval_at(self, value):
        value = self.field.of(value)
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def substitute(self, inner: "XPolynomial") -> "XPolynomial":
        """p(inner(x)) by Horner."""
        acc = XPolynomial.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shifted(self, y) -> "XPolynomial":
        """p(x + y)."""
        return self.substitute(XPolynomial(self.field, (self.field.of(y), self.field.one)))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == self.field.zero:
                continue
            text = self.field.render(c)
            if j == 0:
                parts.append(text)
            else:
                if " + " in text or " - " in text:
                    text = f"({text})"
                xj = "x" if j == 1 else f"x^{j}"
                parts.append(xj if text == "1" else f"{text}*{xj}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"XPolynomial({str(self)})"

    def to_json(self) -> list[str]:
        return [self.field.render(c) for c in self.coeffs]

    def latex(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if c == self.field.zero:
                continue
            ctex = self.field.latex(c)
            if j == 0:
                body = ctex
            else:
                xj = var if j == 1 else f"{var}^{{{j}}}"
                body = xj if ctex == "1" else f"{ctex} {xj}"
            parts.append(body)
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# Functional action


def _require_precision(f: Series, p: XPolynomial) -> None:
    if f.precision <= p.degree:
        raise ValueError(
            f"series precision {f.precision} is insufficient: need more than degree {p.degree}"
        )


def pairing(f: Series, p: XPolynomial):
    """<f | p> = sum_j p_j j! c_j(f)."""
    _require_precision(f, p)
    acc = f.field.zero
    for j, pj in enumerate(p.coeffs):
        if pj != p.field.zero:
            acc = acc + pj * math.factorial(j) * f.coeffs[j]
    return acc


def apply_functional(f: Series, p: XPolynomial) -> XPolynomial:
    """f(t) acting on p: sum_k c_k(f) p^(k)(x); t^k differentiates k times."""
    _require_precision(f, p)
    acc = XPolynomial.zero(p.field)
    deriv = p
    for k in range(p.degree + 1):
        ck = f.coeffs[k]
        if ck != f.field.zero:
            acc = acc + deriv.scale(ck)
        deriv = deriv.derivative()
    return acc


class ShefferPair:
    """An invertible series g and a delta series f."""

    __slots__ = ("g", "f")

    def __init__(self, g: Series, f: Series):
        if g.order() != 0:
            raise ValueError("g must be invertible (order 0)")
        if f.order() != 1:
            raise ValueError("f must be a delta series (order 1)")
        self.g = g
        self.f = f


def appell_basis(g: Series, count: int) -> list[XPolynomial]:
    """S_n = g(t)^{-1} x^n for n < count; satisfies S_n' = n S_{n-1}."""
    if g.order() != 0:
        raise ValueError("Appell basis needs an invertible series")
    if g.precision < count:
        raise ValueError(f"precision {g.precision} too small for {count} basis polynomials")
    inv = g.inverse()
    field = g.field
    return [apply_functional(inv, XPolynomial.monomial(field, n)) for n in range(count)]


def sheffer_basis(pair: ShefferPair, count: int) -> list[XPolynomial]:
    """Sheffer sequence of (g, f) via the generating identity.

    S_n is n! times the t^n coefficient of e^{y fbar(t)} / g(fbar(t)),
    collected as a polynomial in y; for f = t this reproduces the Appell
    basis of g exactly.
    """
    if count <= 0:
        return []
    if pair.g.precision < count or pair.f.precision < count:
        raise ValueError(f"precisions must be at least {count}")
    field = pair.g.field
    if count == 1:
        return [XPolynomial(field, (pair.g.coeffs[0] ** -1,))]
    fbar = pair.f.truncate(count).reverse()
    h = pair.g.truncate(count).compose(fbar).inverse()
    # columns[m] = coefficients of h * fbar^m; fbar^m has order m, so the
    # t^n coefficient contributes y^m only for m <= n
    columns = [h.coeffs]
    power = h
    for _ in range(1, count):
        power = power * fbar
        columns.append(power.coeffs)
    basis = []
    for n in range(count):
        n_fact = math.factorial(n)
        coeffs = [columns[m][n] * Fraction(n_fact, math.factorial(m)) for m in range(n + 1)]
        basis.append(XPolynomial(field, coeffs))
    return basis


def biorthogonality_check(pair: ShefferPair, basis: Sequence[XPolynomial], n: int, k: int):
    """<g f^k | S_n>, which equals n! delta_{n,k} on the true Sheffer basis."""
    if n >= len(basis) or k >= len(basis):
        raise ValueError("indices beyond the provided basis")
    return pairing(pair.g * pair.f ** k, basis[n])


def expand_in_basis(p: XPolynomial, pair: ShefferPair, basis: Sequence[XPolynomial]):
    """Coefficients lambda_k = <g f^k | p> / k! of p in the Sheffer basis."""
    if len(basis) <= p.degree:
        raise ValueError(f"need at least {p.degree + 1} basis polynomials, have {len(basis)}")
    out = []
    gfk = pair.g
    for k in range(p.degree + 1):
        out.append(pairing(gfk, p) * Fraction(1, math.factorial(k)))
        gfk = gfk * pair.f
    return out


def compositions(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """All tuples of m nonnegative integers summing to n."""
    if m == 0:
        if n == 0:
            yield ()
        return
    if m == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, m - 1):
            yield (first,) + rest


def multinomial_pairing(fs: Sequence[Series], n: int):
    """Both sides of the product-pairing identity.

    Returns (<f_1 ... f_m | x^n>, the multinomial-weighted sum over all
    compositions i_1 + ... + i_m = n of prod_j <f_j | x^{i_j}>).
    """
    if not fs:
        raise ValueError("need at least one series")
    field = fs[0].field
    product = fs[0]
    for f in fs[1:]:
        product = product * f
    xn = XPolynomial.monomial(field, n)
    lhs = pairing(product, xn)
    n_fact = math.factorial(n)
    rhs = field.zero
    for parts in compositions(n, len(fs)):
        weight = n_fact
        for i in parts:
            weight //= math.factorial(i)
        term = field.of(weight)
        for f, i in zip(fs, parts):
            term = term * pairing(f, XPolynomial.monomial(field, i))
        rhs = rhs + term
    return lhs, rhs
