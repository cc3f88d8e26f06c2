"""Constructive simplicity and the ad-local-finiteness rank probe.

Any nonzero ``x`` generates the whole algebra as an ideal: ``ad L[-1]``
lowers the valuation to ``-1``, and from an element ``L[-1] + ...`` every
``y`` is reached as a single bracket ``[x, z]``.  ``IdealRecipe`` records the
certificate ``(m, c, z)`` with ``[(ad L[-1])^m (x) / c, z] = y``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, PrecisionExhausted, WindowTooSmall, ZeroElement
from .field import VectorField, ad_power, basis, bracket, format_element, parse_element

__all__ = [
    "IdealRecipe",
    "reduce_valuation",
    "solve_transporter",
    "express_in_ideal",
    "verify_recipe",
    "locfin_rank",
    "exact_rank",
    "parse_recipe",
    "format_recipe",
]


@dataclass(frozen=True)
class IdealRecipe:
    m: int
    c: Fraction
    z: VectorField

    def evaluate(self, x: VectorField) -> VectorField:
        lowered = ad_power(basis(-1, x.prec + 1), x, self.m)
        return bracket(lowered / self.c, self.z)

    def __str__(self):
        return format_recipe(self)


def reduce_valuation(x: VectorField) -> tuple[int, Fraction, VectorField]:
    if x.is_zero():
        raise ZeroElement(f"element vanishes to precision {x.prec}")
    v = x.valuation
    if v < -1:
        raise ValueError("reduce_valuation needs valuation >= -1")
    m = v + 1
    lowered = ad_power(basis(-1, x.prec + 1), x, m)
    c = lowered[-1]
    return m, c, lowered / c


def solve_transporter(x: VectorField, y: VectorField, prec: int | None = None) -> VectorField:
    """Solve ``[x, z] = y`` for ``x = L[-1] + ...``, up to ``y``'s index ``prec``.

    Index ``i`` of ``[x, z]`` is ``(i + 2) z_{i+1} + sum_{n <= i} (2n - i) x_{i-n} z_n``,
    so the coefficients of ``z`` follow one at a time.  ``z_{-1}`` never gets
    a pivot and is pinned to 0.
    """
    if x.valuation != -1 or x[-1] != 1:
        raise ValueError("transporter needs x = L[-1] + (higher terms)")
    available = min(x.prec, y.prec)
    if prec is None:
        prec = available
    if prec > available:
        raise PrecisionExhausted(
            f"x and y are known up to L[{available}], asked for L[{prec}]"
        )
    z = {-1: Fraction(0)}
    for i in range(-1, prec + 1):
        s = 0
        for n in range(0, i + 1):
            zn = z[n]
            if zn:
                s += (2 * n - i) * x[i - n] * zn
        z[i + 1] = (y[i] - s) / (i + 2)
    return VectorField.from_dict(z, prec + 1)


def express_in_ideal(x: VectorField, y: VectorField) -> IdealRecipe:
    m, c, lowered = reduce_valuation(x)
    return IdealRecipe(m, c, solve_transporter(lowered, y))


def verify_recipe(x: VectorField, y: VectorField, recipe: IdealRecipe) -> tuple[bool, int | None]:
    return recipe.evaluate(x).agrees_with(y)


def exact_rank(rows) -> int:
    """Rank of a rational matrix by fraction-free (Bareiss) elimination."""
    mat = []
    for row in rows:
        den = math.lcm(*(v.denominator for v in row)) if row else 1
        mat.append([int(v * den) for v in row])
    if not mat:
        return 0
    n_rows, n_cols = len(mat), len(mat[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        if rank == n_rows:
            break
        pivot = next((r for r in range(rank, n_rows) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        p = mat[rank][col]
        for r in range(rank + 1, n_rows):
            f = mat[r][col]
            mat[r] = [(p * a - f * b) // prev for a, b in zip(mat[r], mat[rank])]
        prev = p
        rank += 1
    return rank


def locfin_rank(s: VectorField, v: VectorField, K: int) -> int:
    """Rank of ``{(ad s)^k v : 0 <= k <= K}`` on their jointly known window."""
    if K < 0:
        raise ValueError("K must be >= 0")
    if s.is_zero():
        raise ZeroElement("s vanishes to precision")
    rows = [v]
    for _ in range(K):
        rows.append(bracket(s, rows[-1]))
    top = min(r.prec for r in rows)
    start = min([-1] + [r.low for r in rows if not r.is_zero()])
    width = top - start + 1
    if width < K + 1:
        raise WindowTooSmall(f"shared window L[{start}]..L[{top}] has {max(width, 0)} columns, need {K + 1}")
    return exact_rank([[r.get(i, 0) for i in range(start, top + 1)] for r in rows])


# text format -----------------------------------------------------------------

_RECIPE = re.compile(
    r"^\s*recipe\s*\{\s*m\s*=\s*(?P<m>-?\d+)\s*;\s*c\s*=\s*(?P<c>[^;]+?)\s*;"
    r"\s*z\s*=\s*(?P<z>.*?)\s*\}\s*$",
    re.S,
)


def parse_recipe(text: str, prec: int = 16) -> IdealRecipe:
    m = _RECIPE.match(text)
    if not m:
        raise ParseError(0, "'recipe{ m = <int>; c = <rat>; z = <element> }'", text)
    try:
        c = Fraction(m.group("c").replace(" ", ""))
    except (ValueError, ZeroDivisionError):
        raise ParseError(m.start("c"), "rational", text) from None
    return IdealRecipe(int(m.group("m")), c, parse_element(m.group("z"), prec))


def format_recipe(r: IdealRecipe) -> str:
    return f"recipe{{ m = {r.m}; c = {r.c}; z = {format_element(r.z)} }}"
