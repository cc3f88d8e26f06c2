"""Dense coefficient window shared by truncated series and vector fields.

A window stores exact rational coefficients for the indices ``low..prec``.
Indices below ``low`` are known to be zero; indices above ``prec`` are
*unknown*.  Storage is normalized so that ``low`` is always the valuation
(the first nonzero known index), and an all-zero window has
``low == prec + 1`` with no stored coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping

from .errors import PrecisionExhausted


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class Window:
    __slots__ = ("_low", "_coeffs", "_prec")

    def __init__(self, coeffs: Iterable = (), low: int = 0, prec: int | None = None):
        values = [as_fraction(c) for c in coeffs]
        if prec is None:
            prec = low + len(values) - 1
        known = prec - low + 1
        if known < 0:
            # nothing stored is known; only "zero below low" survives
            values = []
        elif len(values) > known:
            values = values[:known]
        elif len(values) < known:
            values = values + [Fraction(0)] * (known - len(values))
        start = 0
        while start < len(values) and not values[start]:
            start += 1
        if start == len(values):
            self._low = prec + 1
            self._coeffs = ()
        else:
            self._low = low + start
            self._coeffs = tuple(values[start:])
        self._prec = prec

    # construction helpers -------------------------------------------------

    @classmethod
    def from_dict(cls, terms: Mapping[int, object], prec: int):
        nonzero = {int(i): as_fraction(c) for i, c in terms.items() if i <= prec}
        nonzero = {i: c for i, c in nonzero.items() if c}
        if not nonzero:
            return cls.zero(prec)
        lo = min(nonzero)
        return cls([nonzero.get(i, 0) for i in range(lo, prec + 1)], lo, prec)

    @classmethod
    def zero(cls, prec: int):
        return cls((), prec + 1, prec)

    @classmethod
    def monomial(cls, index: int, prec: int, coeff=1):
        return cls.from_dict({index: coeff}, prec)

    def _like(self, coeffs, low, prec):
        return type(self)(coeffs, low, prec)

    # accessors ------------------------------------------------------------

    @property
    def low(self) -> int:
        return self._low

    @property
    def prec(self) -> int:
        return self._prec

    @property
    def valuation(self) -> int:
        """Least index with a nonzero known coefficient, ``prec + 1`` if none."""
        return self._low

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self._coeffs

    def __getitem__(self, index: int) -> Fraction:
        if index > self._prec:
            raise PrecisionExhausted(
                f"coefficient {index} is unknown (known up to {self._prec})"
            )
        if index < self._low:
            return Fraction(0)
        return self._coeffs[index - self._low]

    def get(self, index: int, default=None):
        if index > self._prec:
            return default
        return self[index]

    def items(self) -> Iterator[tuple[int, Fraction]]:
        """Nonzero known terms in ascending index order."""
        for k, c in enumerate(self._coeffs):
            if c:
                yield self._low + k, c

    def to_dict(self) -> dict[int, Fraction]:
        return dict(self.items())

    # linear structure -----------------------------------------------------

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        prec = min(self._prec, other._prec)
        low = min(self._low, other._low)
        out = [self.get(i, 0) + other.get(i, 0) for i in range(low, prec + 1)]
        return self._like(out, low, prec)

    def __neg__(self):
        return self._like([-c for c in self._coeffs], self._low, self._prec)

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        c = as_fraction(c)
        return self._like([c * a for a in self._coeffs], self._low, self._prec)

    def __rmul__(self, c):
        if isinstance(c, (int, Rational)):
            return self.scale(c)
        return NotImplemented

    def __truediv__(self, c):
        if isinstance(c, (int, Rational)):
            return self.scale(1 / as_fraction(c))
        return NotImplemented

    def truncate(self, prec: int):
        if prec >= self._prec:
            return self
        return self._like(self._coeffs, self._low, prec)

    def with_prec(self, prec: int):
        """Same coefficients, precision ``prec``; extending treats the new indices as zero."""
        return self._like(self._coeffs, self._low, prec)

    # comparison -----------------------------------------------------------

    def agrees_with(self, other) -> tuple[bool, int | None]:
        """Compare on the shared known window; witness is the first bad index."""
        top = min(self._prec, other._prec)
        for i in range(min(self._low, other._low), top + 1):
            if self.get(i, 0) != other.get(i, 0):
                return False, i
        return True, None

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self._prec, self._low, self._coeffs) == (other._prec, other._low, other._coeffs)

    def __hash__(self):
        return hash((type(self).__name__, self._prec, self._low, self._coeffs))

    def __repr__(self):
        return f"{type(self).__name__}({list(map(str, self._coeffs))}, low={self._low}, prec={self._prec})"
