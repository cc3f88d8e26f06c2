"""Automorphisms ``exp(ad x) o scale_b`` with ``x`` of valuation >= 1.

``scale_b`` acts by ``L[i] -> b^i L[i]``; it is the factor usually written
``exp(a0 ad L0)`` with ``b = exp(a0)``.  Working with ``b`` keeps every group
operation inside the rationals.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from ._window import as_fraction
from .errors import (
    InconsistentHead,
    NotAutomorphism,
    NotInFiltrationOne,
    ParseError,
    PrecisionExhausted,
    ZeroElement,
    ZeroScale,
)
from .field import (
    DEFAULT_PREC,
    VectorField,
    basis,
    bracket,
    format_element,
    parse_element,
    series_from_vf,
)
from .series import ts_invert

__all__ = [
    "Automorphism",
    "ImageTable",
    "NormalFormReport",
    "exp_ad",
    "scale_apply",
    "aut_apply",
    "solve_exp_conjugator",
    "aut_factorize",
    "aut_compose",
    "aut_invert",
    "normal_form",
    "leading_coefficients_conjugate",
    "residue_probe",
    "tabulate_images",
    "parse_automorphism",
    "format_automorphism",
]


@dataclass(frozen=True)
class Automorphism:
    x: VectorField
    b: Fraction = Fraction(1)

    def __post_init__(self):
        b = as_fraction(self.b)
        if b == 0:
            raise ZeroScale("scale parameter must be nonzero")
        if self.x.valuation < 1:
            raise NotInFiltrationOne(f"x has valuation {self.x.valuation}")
        object.__setattr__(self, "b", b)

    @classmethod
    def identity(cls, prec: int = DEFAULT_PREC) -> "Automorphism":
        return cls(VectorField.zero(prec), Fraction(1))

    def __call__(self, y: VectorField) -> VectorField:
        return aut_apply(self, y)

    def __str__(self):
        return format_automorphism(self)


@dataclass(frozen=True)
class ImageTable:
    """Images ``sigma(L[i])`` for a finite set of indices."""

    entries: tuple
    prec: int

    @classmethod
    def from_mapping(cls, images: Mapping[int, VectorField]) -> "ImageTable":
        entries = tuple(sorted(images.items()))
        prec = min((v.prec for _, v in entries), default=-2)
        return cls(entries, prec)

    def as_dict(self) -> dict[int, VectorField]:
        return dict(self.entries)


@dataclass(frozen=True)
class NormalFormReport:
    valuation: int
    leading: Fraction
    conjugator: VectorField
    status: str = "Solved"
    obstruction: tuple | None = None  # (index, value) when status == "Obstructed"

    @property
    def solved(self) -> bool:
        return self.status == "Solved"

    def __str__(self):
        status = self.status
        if self.obstruction is not None:
            status = f"Obstructed({self.obstruction[0]}, {self.obstruction[1]})"
        return (
            f"normal-form{{ valuation = {self.valuation}; leading = {self.leading}; "
            f"conjugator = {format_element(self.conjugator)}; status = {status} }}"
        )


# the two generators of the group -------------------------------------------


def exp_ad(x: VectorField, y: VectorField) -> VectorField:
    """``sum_k (ad x)^k (y) / k!``, summed while terms can reach the known window."""
    if x.valuation < 1:
        raise NotInFiltrationOne(f"exp(ad x) needs val(x) >= 1, got {x.valuation}")
    total = y
    term = y
    k = 0
    while True:
        k += 1
        term = bracket(x, term)
        if term.valuation > total.prec:
            return total
        total = total + term / math.factorial(k)


def scale_apply(b, y: VectorField) -> VectorField:
    b = as_fraction(b)
    if b == 0:
        raise ZeroScale("scale parameter must be nonzero")
    return VectorField([c * b**i for i, c in enumerate(y.coeffs, y.low)], y.low, y.prec)


def aut_apply(sigma: Automorphism, y: VectorField) -> VectorField:
    return exp_ad(sigma.x, scale_apply(sigma.b, y))


# triangular solves ---------------------------------------------------------


def _solve_exp(base: VectorField, target: VectorField):
    """Find ``x`` in W_1 with ``exp(ad x)(base) = target`` index by index.

    The unknown ``b_j`` of ``x = sum b_j L[j]`` first enters at index
    ``j + v`` (``v = val(base)``) with pivot ``a (v - j)``, ``a`` the leading
    coefficient of base.  A vanishing pivot (``j = v``) pins ``b_j = 0``; the
    first nonzero residual met there is returned as the obstruction.
    """
    v = base.valuation
    a = base[v]
    top = target.prec
    coeffs: dict[int, Fraction] = {}
    obstruction = None
    for j in range(1, top - v + 1):
        idx = j + v
        trial = VectorField.from_dict(coeffs, j)
        current = exp_ad(trial, base.truncate(idx)) if coeffs else base.truncate(idx)
        residual = target[idx] - current[idx]
        pivot = a * (v - j)
        if pivot:
            coeffs[j] = residual / pivot
        elif residual and obstruction is None:
            obstruction = (idx, residual)
    return VectorField.from_dict(coeffs, top - v), obstruction


def solve_exp_conjugator(target: VectorField, a_minus1, a0) -> VectorField:
    a_minus1, a0 = as_fraction(a_minus1), as_fraction(a0)
    if a_minus1 == 0 and a0 == 0:
        raise ValueError("(a_-1, a_0) must not both vanish")
    if target.prec < 0:
        raise PrecisionExhausted("target is not known up to L[0]")
    # with a_-1 != 0 the L[0] coefficient is a0 - 2 a_-1 b_1 and fixes b_1
    fixed_l0 = a_minus1 == 0
    if target.valuation < -1 or target[-1] != a_minus1 or (fixed_l0 and target[0] != a0):
        raise InconsistentHead(
            f"target starts {target[-1]}*L[-1] + {target[0]}*L[0], "
            f"expected {a_minus1}*L[-1] + {a0}*L[0]"
        )
    head = VectorField.from_dict({-1: a_minus1, 0: a0}, target.prec)
    x, _ = _solve_exp(head, target)
    return x


def normal_form(y: VectorField) -> NormalFormReport:
    """Conjugate ``y`` by some ``exp(ad x)`` to its leading term, when possible."""
    if y.is_zero():
        raise ZeroElement(f"element vanishes to precision {y.prec}")
    v = y.valuation
    if v < -1:
        raise ValueError("normal_form is defined for valuation >= -1")
    lead = y[v]
    x, obstruction = _solve_exp(basis(v, y.prec, lead), y)
    if obstruction is None:
        return NormalFormReport(v, lead, x)
    return NormalFormReport(v, lead, x, "Obstructed", obstruction)


def leading_coefficients_conjugate(a, c, valuation: int) -> bool:
    """Is there a rational ``b != 0`` with ``b^valuation * a == c``?"""
    a, c = as_fraction(a), as_fraction(c)
    if a == 0 or c == 0:
        return a == c
    if valuation == 0:
        return a == c
    ratio = c / a
    n = abs(valuation)
    if valuation < 0:
        ratio = 1 / ratio
    root_num = _exact_root(ratio.numerator, n)
    root_den = _exact_root(ratio.denominator, n)
    return root_num is not None and root_den is not None


def _exact_root(value: int, n: int) -> int | None:
    """Integer ``r`` with ``r**n == value``, or None."""
    if value < 0:
        if n % 2 == 0:
            return None
        r = _exact_root(-value, n)
        return None if r is None else -r
    if value < 2:
        return value
    r = 1 << -(-value.bit_length() // n)
    while True:
        nxt = ((n - 1) * r + value // r ** (n - 1)) // n
        if nxt >= r:
            break
        r = nxt
    return r if r**n == value else None


def residue_probe(y: VectorField) -> Fraction:
    """Coefficient of ``t^-1`` in ``1/f`` for ``y = f d/dt``.

    Extension beyond the automorphism theory implemented here: the residue of
    the dual form ``dt/f`` is the classical formal invariant of vector fields
    with a zero of order >= 2 under coordinate changes tangent to the identity.
    """
    if y.is_zero():
        raise ZeroElement(f"element vanishes to precision {y.prec}")
    inv = ts_invert(series_from_vf(y))
    return inv[-1]


# factorization and group law --------------------------------------------


def tabulate_images(sigma: Automorphism, indices, prec: int) -> ImageTable:
    return ImageTable.from_mapping({i: aut_apply(sigma, basis(i, prec)) for i in indices})


def aut_factorize(images) -> Automorphism:
    """Recover ``(x, b)`` from the images ``sigma(L[i])`` of an automorphism."""
    table = images.as_dict() if isinstance(images, ImageTable) else dict(images)
    if 0 not in table or 1 not in table:
        raise ValueError("images of L[0] and L[1] are required")
    s0 = table[0]
    if s0.prec < 0:
        raise PrecisionExhausted("sigma(L[0]) is not known up to L[0]")
    if s0[-1] != 0 or s0[0] != 1 or s0.valuation < -1:
        raise NotAutomorphism(
            f"sigma(L[0]) = {s0[-1]}*L[-1] + {s0[0]}*L[0] + ... is not in L[0] + W_1"
        )
    x = solve_exp_conjugator(s0, 0, 1)
    minus_x = -x
    tau = {i: exp_ad(minus_x, img) for i, img in table.items()}
    t1 = tau[1]
    if t1.prec < 1:
        raise PrecisionExhausted("sigma(L[1]) is not known up to L[1]")
    b = t1[1]
    if b == 0:
        raise NotAutomorphism("scale parameter read from sigma(L[1]) is zero")
    for i in sorted(tau):
        expected = basis(i, tau[i].prec, b**i)
        ok, at = tau[i].agrees_with(expected)
        if not ok:
            raise NotAutomorphism(
                f"exp(-ad x) sigma(L[{i}]) is not {b**i}*L[{i}]: coefficient of L[{at}] is {tau[i][at]}"
            )
    return Automorphism(x, b)


def aut_compose(sigma: Automorphism, tau: Automorphism, prec: int = DEFAULT_PREC) -> Automorphism:
    """Canonical pair of ``sigma o tau`` (images of L[-1]..L[prec], refactored)."""
    images = {i: aut_apply(sigma, aut_apply(tau, basis(i, prec))) for i in range(-1, prec + 1)}
    return aut_factorize(images)


def aut_invert(sigma: Automorphism, prec: int = DEFAULT_PREC) -> Automorphism:
    # scale_c o exp(ad y) o scale_c^-1 = exp(ad scale_c(y))
    inv_b = 1 / sigma.b
    return Automorphism((-scale_apply(inv_b, sigma.x)).truncate(prec), inv_b)


# text format -----------------------------------------------------------------

_AUT = re.compile(r"^\s*aut\s*\{\s*b\s*=\s*(?P<b>[^;]+?)\s*;\s*x\s*=\s*(?P<x>.*?)\s*\}\s*$", re.S)


def parse_automorphism(text: str, prec: int = DEFAULT_PREC) -> Automorphism:
    m = _AUT.match(text)
    if not m:
        raise ParseError(0, "'aut{ b = <rat>; x = <element> }'", text)
    try:
        b = Fraction(m.group("b").replace(" ", ""))
    except (ValueError, ZeroDivisionError):
        raise ParseError(m.start("b"), "rational scale", text) from None
    try:
        x = parse_element(m.group("x"), prec)
    except ParseError as exc:
        raise ParseError(m.start("x") + exc.position, exc.expected, text) from None
    return Automorphism(x, b)


def format_automorphism(sigma: Automorphism) -> str:
    return f"aut{{ b = {sigma.b}; x = {format_element(sigma.x)} }}"
