"""Derivations given by their values on ``L[-1]..L[M]``.

A table determines a (continuous) derivation to the precision of its
entries: elements far up the filtration are brackets of elements further
up, so their images are eventually invisible at any fixed index.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import NotInnerAtPrecision, ParseError
from .field import VectorField, basis, bracket, format_element, parse_element

__all__ = [
    "DerivationTable",
    "check_derivation",
    "failing_pairs",
    "recover_inner",
    "tabulate_inner",
    "parse_table",
    "format_table",
]


@dataclass(frozen=True)
class DerivationTable:
    images: Mapping[int, VectorField]
    M: int
    prec: int

    def __post_init__(self):
        expected = set(range(-1, self.M + 1))
        if set(self.images) != expected:
            raise ValueError(f"table must cover exactly L[-1]..L[{self.M}]")

    @classmethod
    def from_images(cls, images: Mapping[int, VectorField]) -> "DerivationTable":
        images = dict(sorted(images.items()))
        return cls(images, max(images), min(v.prec for v in images.values()))

    def __getitem__(self, i: int) -> VectorField:
        return self.images[i]


def tabulate_inner(w: VectorField, M: int, prec: int) -> DerivationTable:
    """Table of ``ad w`` on ``L[-1]..L[M]``, entries capped at ``prec``."""
    width = w.prec + M + 2
    return DerivationTable.from_images(
        {i: bracket(w, basis(i, width)).truncate(prec) for i in range(-1, M + 1)}
    )


def _relation(D: DerivationTable, i: int, j: int, width: int):
    lhs = D[i + j] * (j - i)
    rhs = bracket(D[i], basis(j, width)) + bracket(basis(i, width), D[j])
    return lhs.agrees_with(rhs)


def failing_pairs(D: DerivationTable) -> list[tuple[int, int]]:
    width = D.prec + D.M + 2
    out = []
    for i in range(-1, D.M + 1):
        for j in range(i + 1, min(D.M, D.M - i) + 1):
            if not _relation(D, i, j, width)[0]:
                out.append((i, j))
    return out


def check_derivation(D: DerivationTable) -> tuple[bool, tuple[int, int] | None]:
    """Leibniz rule on every basis pair ``i < j`` with ``i + j <= M``.

    Pairs are visited in lexicographic order; the witness is the first failure.
    """
    width = D.prec + D.M + 2
    for i in range(-1, D.M + 1):
        for j in range(i + 1, min(D.M, D.M - i) + 1):
            if not _relation(D, i, j, width)[0]:
                return False, (i, j)
    return True, None


def recover_inner(D: DerivationTable) -> VectorField:
    """Return ``w`` with ``D = ad w`` on every table entry, or raise.

    From ``D(L0) = sum a_i L_i`` take ``v = -sum_{i != 0} (a_i / i) L_i``;
    then ``D - ad v`` must be diagonal with eigenvalue ``a_1 * i`` on
    ``L_i``, and ``w = v + a_1 L_0``.
    """
    width = D.prec + D.M + 2
    d0 = D[0]
    v = VectorField.from_dict({i: -c / i for i, c in d0.items() if i != 0}, d0.prec)
    rest0 = d0 - bracket(v, basis(0, width))
    if not rest0.is_zero():
        raise NotInnerAtPrecision(0, rest0)

    def reduced(i):
        return D[i] - bracket(v, basis(i, width))

    r1 = reduced(1)
    a1 = r1.get(1, Fraction(0))
    for i in sorted(D.images):
        r = reduced(i)
        off = r - basis(i, r.prec, a1 * i)
        if not off.is_zero():
            raise NotInnerAtPrecision(i, off)
    w = v + basis(0, v.prec, a1)
    for i in sorted(D.images):
        res = D[i] - bracket(w, basis(i, width))
        if not res.is_zero():
            raise NotInnerAtPrecision(i, res)
    return w


# file format -----------------------------------------------------------------

_LINE = re.compile(r"^\s*D\s+L\[\s*(-?\d+)\s*\]\s*=\s*(.*?)\s*$")
_HEADER = re.compile(r"^\s*@prec\s+(-?\d+)\s*$")


def parse_table(text: str, prec: int | None = None, tag: str = "D") -> dict[int, VectorField]:
    """Parse lines ``D L[i] = <element>`` after an ``@prec N`` header.

    Returns the raw image mapping; ``tag`` lets the same format carry
    automorphism images (``S L[i] = ...``).
    """
    line_re = re.compile(_LINE.pattern.replace("D", re.escape(tag), 1))
    images: dict[int, VectorField] = {}
    offset = 0
    for raw in text.splitlines(keepends=True):
        line = raw.split("#", 1)[0]
        if not line.strip():
            offset += len(raw)
            continue
        m = _HEADER.match(line)
        if m:
            prec = int(m.group(1))
            offset += len(raw)
            continue
        m = line_re.match(line)
        if not m:
            raise ParseError(offset, f"'{tag} L[<int>] = <element>' or '@prec <int>'", text)
        if prec is None:
            raise ParseError(offset, "'@prec <int>' header before the first entry", text)
        i = int(m.group(1))
        if i in images:
            raise ParseError(offset, f"a single entry for L[{i}]", text)
        try:
            images[i] = parse_element(m.group(2), prec)
        except ParseError as exc:
            raise ParseError(offset + m.start(2) + exc.position, exc.expected, text) from None
        offset += len(raw)
    if not images:
        raise ParseError(len(text), "at least one entry", text)
    return images


def format_table(images: Mapping[int, VectorField], tag: str = "D") -> str:
    prec = min(v.prec for v in images.values())
    lines = [f"@prec {prec}"]
    lines += [f"{tag} L[{i}] = {format_element(images[i])}" for i in sorted(images)]
    return "\n".join(lines) + "\n"
