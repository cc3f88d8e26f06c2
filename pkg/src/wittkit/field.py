"""Elements of the completed Witt algebra in the basis ``L[i] = t^(i+1) d/dt``.

A ``VectorField`` stores the coefficients of ``L[low]..L[prec]``; higher
indices are unknown.  Strict elements have ``low >= -1``; smaller indices are
allowed for vector fields with a finite pole at ``t = 0``.

The bracket is the full convolution induced by ``[L_m, L_n] = (n - m) L_{m+n}``,
i.e. ``[f d/dt, g d/dt] = (f g' - g f') d/dt``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ._window import Window, as_fraction
from .errors import ParseError
from .series import TruncatedSeries

__all__ = [
    "VectorField",
    "FiltrationLevel",
    "basis",
    "vf_from_series",
    "series_from_vf",
    "bracket",
    "ad_power",
    "project",
    "eq_to_precision",
    "parse_element",
    "format_element",
    "ELEMENT_GRAMMAR",
]

DEFAULT_PREC = 16


class VectorField(Window):
    __slots__ = ()

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __str__(self):
        return format_element(self)


def basis(i: int, prec: int = DEFAULT_PREC, coeff=1) -> VectorField:
    """``coeff * L[i]`` known up to index ``prec``."""
    return VectorField.monomial(i, prec, coeff)


@dataclass(frozen=True)
class FiltrationLevel:
    """The subspace of elements supported on indices ``>= i``."""

    i: int

    def contains(self, x: VectorField) -> bool:
        return x.valuation >= self.i


def vf_from_series(f: TruncatedSeries) -> VectorField:
    return VectorField(f.coeffs, f.low - 1, f.prec - 1)


def series_from_vf(x: VectorField) -> TruncatedSeries:
    return TruncatedSeries(x.coeffs, x.low + 1, x.prec + 1)


def bracket(x: VectorField, y: VectorField) -> VectorField:
    vx, vy = x.valuation, y.valuation
    prec = min(x.prec + vy, y.prec + vx)
    if x.is_zero() or y.is_zero():
        return VectorField.zero(prec)
    low = vx + vy
    a, b = x.coeffs, y.coeffs
    la, lb = len(a), len(b)
    out = []
    for i in range(low, prec + 1):
        k = i - low  # offset into the convolution
        s = 0
        for p in range(max(0, k - lb + 1), min(k, la - 1) + 1):
            m = vx + p
            s += (i - 2 * m) * a[p] * b[k - p]
        out.append(s)
    return VectorField(out, low, prec)


def ad_power(s: VectorField, y: VectorField, k: int) -> VectorField:
    if k < 0:
        raise ValueError("k must be >= 0")
    for _ in range(k):
        y = bracket(s, y)
    return y


def project(x: VectorField, level) -> VectorField:
    """Drop the coefficients below the filtration level (an int or FiltrationLevel)."""
    i = level.i if isinstance(level, FiltrationLevel) else int(level)
    return VectorField.from_dict({j: c for j, c in x.items() if j >= i}, x.prec)


def eq_to_precision(x: VectorField, y: VectorField) -> tuple[bool, int | None]:
    return x.agrees_with(y)


# text format --------------------------------------------------------------

ELEMENT_GRAMMAR = """\
element := term (("+"|"-") term)* ["@prec" int]
term    := [rat "*"] "L[" int "]"        (a lone "0" is the zero element)
rat     := ["-"] int ["/" posint]"""

_TOKEN = re.compile(
    r"\s*(?:(?P<prec>@prec)|(?P<basis>L\[\s*(?P<index>-?\d+)\s*\])"
    r"|(?P<rat>\d+(?:\s*/\s*\d+)?)|(?P<op>[-+*]))"
)


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(pos, "'L[<int>]', rational, sign or '@prec'", text)
        start = m.start(m.lastgroup)
        if m.group("prec"):
            out.append(("prec", None, start))
        elif m.group("basis"):
            out.append(("L", int(m.group("index")), start))
        elif m.group("rat"):
            num, _, den = m.group("rat").partition("/")
            if den and int(den) == 0:
                raise ParseError(start, "positive denominator", text)
            out.append(("rat", Fraction(int(num), int(den or 1)), start))
        else:
            out.append((m.group("op"), None, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def parse_element(text: str, prec: int = DEFAULT_PREC) -> VectorField:
    """Parse ``"L[-1] + 3/2*L[2] @prec 16"``; ``prec`` applies when ``@prec`` is absent."""
    toks = _tokens(text)
    k = 0
    terms: dict[int, Fraction] = {}

    def fail(expected):
        raise ParseError(toks[k][2], expected, text)

    sign = 1
    if toks[k][0] in ("+", "-"):
        sign = -1 if toks[k][0] == "-" else 1
        k += 1
    while True:
        kind, value, _ = toks[k]
        if kind == "rat":
            coeff = value
            k += 1
            if toks[k][0] == "*":
                k += 1
                if toks[k][0] != "L":
                    fail("'L[<int>]'")
                index = toks[k][1]
                k += 1
            elif coeff == 0:
                index = None
            else:
                fail("'*'")
        elif kind == "L":
            coeff, index = Fraction(1), value
            k += 1
        else:
            fail("term")
        if index is not None:
            terms[index] = terms.get(index, 0) + sign * coeff
        kind = toks[k][0]
        if kind in ("+", "-"):
            sign = -1 if kind == "-" else 1
            k += 1
            continue
        break
    if toks[k][0] == "prec":
        k += 1
        neg = 1
        if toks[k][0] == "-":
            neg = -1
            k += 1
        if toks[k][0] != "rat" or toks[k][1].denominator != 1:
            fail("integer precision")
        prec = neg * int(toks[k][1])
        k += 1
    if toks[k][0] != "end":
        fail("end of element")
    return VectorField.from_dict(terms, prec)


def _format_rat(c: Fraction) -> str:
    return str(as_fraction(c))


def format_element(x: VectorField) -> str:
    parts = []
    for i, c in x.items():
        body = f"L[{i}]" if abs(c) == 1 else f"{_format_rat(abs(c))}*L[{i}]"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return f"{' '.join(parts) or '0'} @prec {x.prec}"
