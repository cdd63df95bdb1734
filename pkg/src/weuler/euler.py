"""Weighted Euler numbers and polynomials, with the identity verification suite.

Everything is generated by the exponential generating function
(2/(w e^t + 1))^k e^{xt}: numbers are the x = 0 values, polynomials carry the
binomial structure, and order k means the k-th power of the base factor.  A
triangular recurrence provides a second, independent route to the numbers;
the two must agree exactly in Q(w).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .ratfunc import QQ, QW, W, binomial
from .series import Series
from .umbral import XPolynomial, appell_basis, apply_functional, compositions, pairing


def _field_and_w(w):
    """Symbolic mode (w = None) works over Q(w); otherwise over Q at w0."""
    if w is None:
        return QW, W
    w0 = Fraction(w)
    return QQ, w0


def gf_denominator(precision: int, order: int = 1, w=None) -> Series:
    """((w e^t + 1)/2)^order as a truncated series."""
    field, wv = _field_and_w(w)
    half = Fraction(1, 2)
    coeffs = [(wv + 1) * half]
    fact = 1
    for k in range(1, precision):
        fact *= k
        coeffs.append(wv * Fraction(1, 2 * fact))
    base = Series(field, coeffs)
    out = base
    for _ in range(order - 1):
        out = out * base
    return out


def weighted_euler_gf(precision: int, order: int = 1, w=None) -> Series:
    """(2/(w e^t + 1))^order; the numbers are n! times its coefficients."""
    if precision < 1 or order < 1:
        raise ValueError("precision and order must be at least 1")
    gf = gf_denominator(precision, 1, w).inverse()
    out = gf
    for _ in range(order - 1):
        out = out * gf
    return out


def weighted_euler_numbers(count: int, w=None) -> list:
    """E_{n,w} by the triangular recurrence, independent of series inversion.

    From (w e^t + 1) * GF = 2: (1+w) E_n = 2 [n=0] - w sum_{j<n} C(n,j) E_j.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    field, wv = _field_and_w(w)
    numbers = []
    for n in range(count):
        acc = field.of(2) if n == 0 else field.zero
        if n:
            s = field.zero
            for j in range(n):
                s = s + binomial(n, j) * numbers[j]
            acc = acc - wv * s
        numbers.append(acc / (wv + 1))
    return numbers


def order_k_numbers(count: int, order: int = 1, w=None) -> list:
    """E^{(k)}_{n,w} = n! [t^n] of the order-k generating function."""
    gf = weighted_euler_gf(count, order, w)
    return [gf.umbral_coefficient(n) for n in range(count)]


def weighted_euler_polys(count: int, order: int = 1, w=None) -> list[XPolynomial]:
    """E^{(k)}_{n,w}(x) = sum_l C(n,l) x^l E^{(k)}_{n-l,w}."""
    field, _ = _field_and_w(w)
    numbers = order_k_numbers(count, order, w)
    return _polys_from_numbers(field, numbers)


def _polys_from_numbers(field, numbers: Sequence) -> list[XPolynomial]:
    polys = []
    for n in range(len(numbers)):
        coeffs = [binomial(n, l) * numbers[n - l] for l in range(n + 1)]
        polys.append(XPolynomial(field, coeffs))
    return polys


def classical_euler_polys(count: int) -> list[XPolynomial]:
    """Classical Euler polynomials over Q by the reflection recurrence.

    E_n(x) = x^n - (1/2) sum_{j<n} C(n,j) E_j(x); deliberately avoids the
    generating-function machinery so it can serve as an independent oracle.
    """
    polys: list[XPolynomial] = []
    half = Fraction(1, 2)
    for n in range(count):
        p = XPolynomial.monomial(QQ, n)
        for j in range(n):
            p = p - polys[j].scale(binomial(n, j) * half)
        polys.append(p)
    return polys


class EulerTable:
    """Numbers and polynomials of one order, symbolic or evaluated at w0.

    The raw constructor stores what it is given (tests inject faults through
    it); build() derives everything from the generating function and checks
    the structural invariants.
    """

    __slots__ = ("field", "order", "w0", "numbers", "polys")

    def __init__(self, field, order: int, numbers: Sequence, polys: Sequence[XPolynomial], w0=None):
        self.field = field
        self.order = order
        self.w0 = w0
        self.numbers = tuple(numbers)
        self.polys = tuple(polys)

    @classmethod
    def build(cls, count: int, order: int = 1, w=None) -> "EulerTable":
        field, wv = _field_and_w(w)
        numbers = order_k_numbers(count, order, w)
        polys = _polys_from_numbers(field, numbers)
        leading = (field.of(2) / (wv + 1)) ** order
        for n, p in enumerate(polys):
            if p.degree != n or p.coefficient(n) != leading:
                raise AssertionError(f"degree law broken at n={n}")
            if p.coefficient(0) != numbers[n]:
                raise AssertionError(f"constant term is not E_{n}")
        return cls(field, order, numbers, polys, w0=None if w is None else Fraction(w))

    @property
    def count(self) -> int:
        return len(self.numbers)

    def w_value(self):
        """w as a field element: the indeterminate, or the chosen rational."""
        return W if self.w0 is None else QQ.of(self.w0)

    def evaluate(self, w0) -> "EulerTable":
        """Specialize a symbolic table at w = w0."""
        if self.w0 is not None:
            raise ValueError("table is already evaluated")
        w0 = Fraction(w0)
        numbers = [r.eval_at(w0) for r in self.numbers]
        polys = [XPolynomial(QQ, [c.eval_at(w0) for c in p.coeffs]) for p in self.polys]
        return EulerTable(QQ, self.order, numbers, polys, w0=w0)

    def with_perturbed_number(self, n: int, delta=1) -> "EulerTable":
        """Fault injection: bump E_n and rebuild the polynomials from it."""
        numbers = list(self.numbers)
        numbers[n] = numbers[n] + self.field.of(delta)
        return EulerTable(self.field, self.order, numbers,
                          _polys_from_numbers(self.field, numbers), self.w0)


# ---------------------------------------------------------------------------
# Convolution identity


def order_k_multinomial(order: int, n: int, w=None, numbers=None, order_k=None):
    """Both sides of E^{(k)}_{n,w} = sum multinomial(n; i's) prod_j E_{i_j,w}.

    The left side comes from the order-k generating function, the right from
    an explicit sum over all compositions of n into `order` parts.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    field, _ = _field_and_w(w)
    if order_k is None:
        order_k = order_k_numbers(n + 1, order, w)
    if numbers is None:
        numbers = weighted_euler_numbers(n + 1, w)
    lhs = order_k[n]
    n_fact = math.factorial(n)
    rhs = field.zero
    for parts in compositions(n, order):
        weight = n_fact
        term = field.one
        for i in parts:
            weight //= math.factorial(i)
            term = term * numbers[i]
        rhs = rhs + weight * term
    return lhs, rhs


# ---------------------------------------------------------------------------
# Verification suite


@dataclass
class CheckResult:
    check: str
    status: str                      # "pass" | "fail"
    counterexample: Optional[dict] = None

    def to_json(self, max_n: int, max_k: int) -> dict:
        row = {"check": self.check, "status": self.status, "maxN": max_n, "maxK": max_k}
        if self.counterexample is not None:
            row["counterexample"] = self.counterexample
        return row


@dataclass
class Report:
    max_n: int
    max_k: int
    results: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.results)

    def to_json(self) -> list[dict]:
        return [r.to_json(self.max_n, self.max_k) for r in self.results]

    def render_text(self) -> str:
        width = max(len(r.check) for r in self.results) + 2
        lines = [f"verification suite: maxN={self.max_n} maxK={self.max_k}"]
        for r in self.results:
            lines.append(f"{r.check:<{width}}{r.status.upper()}")
            if r.counterexample:
                ce = r.counterexample
                where = ", ".join(f"{key}={ce[key]}" for key in ("n", "k") if key in ce)
                lines.append(f"{'':<{width}}at {where}: difference = {ce['difference']}")
        lines.append("result: " + ("ALL PASS" if self.passed else "FAILURES PRESENT"))
        return "\n".join(lines)


def _counterexample(field, n, k, difference) -> dict:
    text = str(difference) if isinstance(difference, XPolynomial) else field.render(difference)
    return {"n": n, "k": k, "difference": text}


def verify_paper_suite(max_n: int, max_k: int, tables=None) -> Report:
    """Run the full identity suite over Q(w) for n < max_n, 1 <= k <= max_k.

    `tables` may supply prebuilt (possibly perturbed) EulerTable values keyed
    by order; missing orders are built fresh.  Failures are reported, never
    raised.
    """
    if max_n < 2 or max_k < 1:
        raise ValueError("need max_n >= 2 and max_k >= 1")
    tables = dict(tables) if tables else {}
    w0 = next((t.w0 for t in tables.values()), None)
    for k in range(1, max_k + 1):
        if k not in tables:
            tables[k] = EulerTable.build(max_n, k, w=w0)

    t1 = tables[1]
    field = t1.field
    wv = t1.w_value()
    precision = max_n + 1
    g = gf_denominator(precision, 1, w=w0)
    gf = g.inverse()
    results: list[CheckResult] = []

    def record(label: str, failure: Optional[dict]) -> None:
        if failure is None:
            results.append(CheckResult(label, "pass"))
        else:
            results.append(CheckResult(label, "fail", failure))

    # (a) derivative lowers the index, every order
    failure = None
    for k in range(1, max_k + 1):
        polys = tables[k].polys
        for n in range(1, max_n):
            diff = polys[n].derivative() - polys[n - 1].scale(n)
            if not diff.is_zero():
                failure = _counterexample(field, n, k, diff)
                break
        if failure:
            break
    record("(a) lowering", failure)

    # (b) the base factor inverts the Appell map: g(t) E_n(x) = x^n
    failure = None
    for n in range(max_n):
        diff = apply_functional(g, t1.polys[n]) - XPolynomial.monomial(field, n)
        if not diff.is_zero():
            failure = _counterexample(field, n, 1, diff)
            break
    record("(b) appell inversion", failure)

    # (c) E_{n+1} = x E_n - (g'/g) E_n, the ratio truncated to precision n+2
    failure = None
    ratio_full = g.derivative() * g.truncate(precision - 1).inverse()
    x = XPolynomial.variable(field)
    for n in range(max_n - 1):
        ratio = ratio_full.truncate(n + 2)
        rhs = x * t1.polys[n] - apply_functional(ratio, t1.polys[n])
        diff = t1.polys[n + 1] - rhs
        if not diff.is_zero():
            failure = _counterexample(field, n, 1, diff)
            break
    record("(c) operator recurrence", failure)

    # (d) reflection: w E_n(x+1) + E_n(x) = 2 x^n
    failure = None
    for n in range(max_n):
        p = t1.polys[n]
        diff = p.shifted(1).scale(wv) + p - XPolynomial.monomial(field, n, 2)
        if not diff.is_zero():
            failure = _counterexample(field, n, 1, diff)
            break
    record("(d) reflection", failure)

    # (e) <GF | x^n> recovers the stored numbers
    failure = None
    for n in range(max_n):
        diff = pairing(gf, XPolynomial.monomial(field, n)) - t1.numbers[n]
        if diff != field.zero:
            failure = _counterexample(field, n, 1, diff)
            break
    record("(e) functional representation", failure)

    # (f) GF acting as an operator sends x^n to the stored polynomials
    failure = None
    for n in range(max_n):
        diff = apply_functional(gf, XPolynomial.monomial(field, n)) - t1.polys[n]
        if not diff.is_zero():
            failure = _counterexample(field, n, 1, diff)
            break
    record("(f) operator representation", failure)

    # (g) order-k functional: <GF^k | x^n> = stored order-k numbers
    failure = None
    gfk = gf
    for k in range(1, max_k + 1):
        if k > 1:
            gfk = gfk * gf
        for n in range(max_n):
            diff = pairing(gfk, XPolynomial.monomial(field, n)) - tables[k].numbers[n]
            if diff != field.zero:
                failure = _counterexample(field, n, k, diff)
                break
        if failure:
            break
    record("(g) order-k functional", failure)

    # (h) stored polynomials match the Appell basis of g^k
    failure = None
    gk = g
    for k in range(1, max_k + 1):
        if k > 1:
            gk = gk * g
        basis = appell_basis(gk, max_n)
        for n in range(max_n):
            diff = tables[k].polys[n] - basis[n]
            if not diff.is_zero():
                failure = _counterexample(field, n, k, diff)
                break
        if failure:
            break
    record("(h) order-k binomial form", failure)

    # (i) multinomial convolution of the stored numbers
    failure = None
    for k in range(1, max_k + 1):
        for n in range(max_n):
            lhs, rhs = order_k_multinomial(k, n, w=w0, numbers=t1.numbers, order_k=tables[k].numbers)
            diff = lhs - rhs
            if diff != field.zero:
                failure = _counterexample(field, n, k, diff)
                break
        if failure:
            break
    record("(i) multinomial", failure)

    # (j) expansion of the GF itself in the basis {g t^k}: the coefficients
    # are <GF | E_k(x)>/k!, and the sum must rebuild the GF term by term
    failure = None
    total = Series.zero(field, max_n)
    for k in range(max_n):
        lam = pairing(gf, t1.polys[k]) * Fraction(1, math.factorial(k))
        total = total + g.truncate(max_n).mul_tk(k).scale(lam)
    for n in range(max_n):
        diff = total.coefficient(n) - gf.coefficient(n)
        if diff != field.zero:
            failure = _counterexample(field, n, 1, diff)
            break
    record("(j) basis expansion of the GF", failure)

    # (k) w = 1 collapses to the classical Euler polynomials
    failure = None
    classical = classical_euler_polys(max_n)
    candidates = [EulerTable.build(max_n, 1, w=1)]
    if t1.w0 is None:
        candidates.insert(0, t1.evaluate(1))
    elif t1.w0 == 1:
        candidates.insert(0, t1)
    for n in range(max_n):
        for tab in candidates:
            diff = tab.polys[n] - classical[n]
            if not diff.is_zero():
                failure = _counterexample(QQ, n, 1, diff)
                break
        if failure:
            break
    record("(k) classical reduction at w=1", failure)

    results.sort(key=lambda r: r.check)
    return Report(max_n, max_k, results)


# ---------------------------------------------------------------------------
# LaTeX table bodies


def latex_numbers_rows(table: EulerTable) -> str:
    """Tabular rows `n & value \\\\` for the numbers of one order."""
    rows = []
    for n, value in enumerate(table.numbers):
        rows.append(f"{n} & ${table.field.latex(value)}$ \\\\")
    return "\n".join(rows)


def latex_polys_rows(table: EulerTable) -> str:
    rows = []
    for n, p in enumerate(table.polys):
        rows.append(f"{n} & ${p.latex()}$ \\\\")
    return "\n".join(rows)
