"""Truncated Laurent series over the rationals.

``TruncatedSeries`` knows its coefficients for the exponents ``low..prec``;
everything above ``prec`` is unknown, never assumed to be zero.  All the
operations below report the largest precision they can prove.

Multiplication is the schoolbook Cauchy product.  Precisions in this package
stay well below a few hundred, so nothing faster is needed; ``_cauchy`` is
the single place to swap in a subquadratic product.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ._window import Window, as_fraction
from .errors import AllZeroToPrecision, DomainError, ParseError, ZeroBasePoint

__all__ = [
    "TruncatedSeries",
    "ts_add",
    "ts_mul",
    "ts_invert",
    "ts_derive",
    "ts_pow",
    "elementary",
    "binomial_power",
    "parse_series_expr",
    "format_series",
    "SERIES_GRAMMAR",
]


class TruncatedSeries(Window):
    """Exact series ``sum c_e t^e`` known for exponents up to ``prec``."""

    __slots__ = ()

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return ts_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        return ts_pow(self, n)

    def __str__(self):
        return format_series(self)


def ts_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def _cauchy(a: tuple, b: tuple, n: int) -> list:
    """First ``n`` coefficients of the product of two dense coefficient runs."""
    out = []
    la, lb = len(a), len(b)
    for k in range(n):
        s = 0
        for i in range(max(0, k - lb + 1), min(k, la - 1) + 1):
            s += a[i] * b[k - i]
        out.append(s)
    return out


def ts_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    va, vb = a.valuation, b.valuation
    prec = min(a.prec + vb, b.prec + va)
    low = va + vb
    if a.is_zero() or b.is_zero():
        return TruncatedSeries.zero(prec)
    n = prec - low + 1
    return TruncatedSeries(_cauchy(a.coeffs, b.coeffs, n), low, prec)


def ts_invert(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series with a known nonzero coefficient.

    Writing ``a = t^v u`` with ``u(0) != 0``, the unit part is known to
    relative order ``prec - v``, hence the inverse is known up to
    ``prec - 2v``.
    """
    if a.is_zero():
        raise AllZeroToPrecision(f"series vanishes to precision {a.prec}")
    v = a.valuation
    u = a.coeffs
    n = a.prec - v
    lead = u[0]
    w = [1 / lead]
    for k in range(1, n + 1):
        s = 0
        for j in range(1, min(k, len(u) - 1) + 1):
            s += u[j] * w[k - j]
        w.append(-s / lead)
    return TruncatedSeries(w, -v, n - v)


def ts_derive(a: TruncatedSeries) -> TruncatedSeries:
    prec = a.prec - 1
    if a.is_zero():
        return TruncatedSeries.zero(prec)
    low = a.low
    out = [(low + k) * c for k, c in enumerate(a.coeffs)]
    return TruncatedSeries(out, low - 1, prec)


def ts_pow(a: TruncatedSeries, n: int) -> TruncatedSeries:
    """Integer power; negative exponents go through ``ts_invert``."""
    if n < 0:
        return ts_invert(ts_pow(a, -n))
    result = TruncatedSeries.monomial(0, a.prec - a.valuation)
    base = a
    while n:
        if n & 1:
            result = ts_mul(result, base)
        n >>= 1
        if n:
            base = ts_mul(base, base)
    return result


def elementary(kind: str, c, prec: int) -> TruncatedSeries:
    """Taylor series of exp(ct), sin(ct) or cos(ct) up to ``t^prec``."""
    if prec < 0:
        raise ValueError("prec must be >= 0")
    c = as_fraction(c)
    coeffs = []
    power = Fraction(1)
    for k in range(prec + 1):
        term = power / math.factorial(k)
        if kind == "exp":
            coeffs.append(term)
        elif kind == "sin":
            coeffs.append(term * (-1) ** ((k - 1) // 2) if k % 2 else 0)
        elif kind == "cos":
            coeffs.append(0 if k % 2 else term * (-1) ** (k // 2))
        else:
            raise ValueError(f"unknown elementary function {kind!r}")
        power *= c
    return TruncatedSeries(coeffs, 0, prec)


def binomial_power(a, n: int, prec: int) -> TruncatedSeries:
    """Series of ``(t + a)^n`` for any integer ``n``, known up to ``t^prec``."""
    a = as_fraction(a)
    if n < 0:
        if a == 0:
            raise ZeroBasePoint("(t + 0)^n with n < 0 has no expansion at t = 0")
        return ts_invert(binomial_power(a, -n, prec))
    coeffs = [math.comb(n, k) * a ** (n - k) for k in range(min(n, prec) + 1)]
    return TruncatedSeries(coeffs, 0, prec)


def format_series(s: TruncatedSeries) -> str:
    parts = []
    for e, c in s.items():
        if e == 0:
            body = str(abs(c))
        else:
            mono = "t" if e == 1 else f"t^{e}"
            body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return f"{' '.join(parts) or '0'} @prec {s.prec}"


# expression front end ---------------------------------------------------

SERIES_GRAMMAR = """\
expr   := factor ( "*" factor )*
factor := atom [ "^" int ]
atom   := "t" | "(" "t" ("+"|"-") rat ")" | fun "(" [rat ["*"]] "t" ")" | rat | "(" expr ")"
fun    := "exp" | "sin" | "cos"
rat    := ["-"] int [ "/" posint ]"""

_FUNS = ("exp", "sin", "cos")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, k: int = 0) -> str:
        """k-th upcoming non-space character (or '' at the end)."""
        self._skip()
        p = self.pos
        for _ in range(k + 1):
            while p < len(self.text) and self.text[p].isspace():
                p += 1
            if p >= len(self.text):
                return ""
            ch = self.text[p]
            p += 1
        return ch

    def error(self, expected):
        self._skip()
        return ParseError(self.pos, expected, self.text)

    def expect(self, ch: str):
        if self.peek() != ch:
            raise self.error(repr(ch))
        self.pos += 1

    def word(self) -> str | None:
        self._skip()
        for name in _FUNS:
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                return name
        return None

    def integer(self, signed: bool = True) -> int:
        self._skip()
        start = self.pos
        neg = False
        if signed and self.peek() == "-":
            neg = True
            self.pos += 1
            self._skip()
        digits_start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits_start:
            self.pos = start
            raise self.error("integer")
        value = int(self.text[digits_start:self.pos])
        return -value if neg else value

    def rational(self) -> Fraction:
        num = self.integer()
        if self.peek() == "/":
            self.pos += 1
            den = self.integer(signed=False)
            if den == 0:
                raise self.error("positive denominator")
            return Fraction(num, den)
        return Fraction(num)

    def expr(self):
        factors = [self.factor()]
        while self.peek() == "*":
            self.pos += 1
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else ("mul", factors)

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            return ("pow", base, self.integer())
        return base

    def atom(self):
        ch = self.peek()
        if ch == "t":
            self.pos += 1
            return ("t",)
        if ch == "(":
            self.pos += 1
            if self.peek() == "t" and self.peek(1) in ("+", "-"):
                self.expect("t")
                sign = 1 if self.peek() == "+" else -1
                self.pos += 1
                a = self.rational()
                self.expect(")")
                return ("binom", sign * a)
            inner = self.expr()
            self.expect(")")
            return inner
        if ch.isalpha():
            name = self.word()
            if name is None:
                raise self.error("'t', 'exp', 'sin' or 'cos'")
            self.expect("(")
            c = Fraction(1)
            if self.peek() == "-" and self.peek(1) == "t":
                self.pos += 1
                c = Fraction(-1)
            elif self.peek() != "t":
                c = self.rational()
                if self.peek() == "*":
                    self.pos += 1
            self.expect("t")
            self.expect(")")
            return ("fun", name, c)
        if ch == "-" or ch.isdigit():
            return ("const", self.rational())
        raise self.error("atom")

    def parse(self):
        node = self.expr()
        if self.peek() != "":
            raise self.error("'*', '^' or end of input")
        return node


def _evaluate(node, w: int) -> TruncatedSeries:
    tag = node[0]
    if tag == "t":
        return TruncatedSeries.monomial(1, w)
    if tag == "binom":
        return binomial_power(node[1], 1, w)
    if tag == "fun":
        return elementary(node[1], node[2], w)
    if tag == "const":
        return TruncatedSeries.monomial(0, w, node[1])
    if tag == "mul":
        result = _evaluate(node[1][0], w)
        for f in node[1][1:]:
            result = ts_mul(result, _evaluate(f, w))
        return result
    if tag == "pow":
        try:
            return ts_pow(_evaluate(node[1], w), node[2])
        except AllZeroToPrecision as exc:
            raise DomainError(f"negative power of a vanishing series: {exc}") from None
    raise AssertionError(tag)


def at_precision(build, prec: int, max_rounds: int = 32) -> TruncatedSeries:
    """Call ``build(working_prec)`` with growing working precision until the
    result is known up to ``prec``, then truncate it there."""
    w = max(prec, 0)
    for _ in range(max_rounds):
        result = build(w)
        if result.prec >= prec:
            return result.truncate(prec)
        w += prec - result.prec
    raise DomainError(f"could not reach precision {prec}")


def parse_series_expr(text: str, prec: int) -> TruncatedSeries:
    """Exact series of ``text`` (see ``SERIES_GRAMMAR``) known up to ``t^prec``.

    >>> str(parse_series_expr("exp(3t)", 2))
    '1 + 3*t + 9/2*t^2 @prec 2'
    """
    node = _Parser(text).parse()
    return at_precision(lambda w: _evaluate(node, w), prec)
