"""Generator families B1-B7 realized inside the (Laurent-extended) Witt algebra.

Each family is a span of explicit vector fields such as ``2 sin(nt) d/dt``
or ``t^m (t+a)^n d/dt``, closed under the bracket by a printed structure
constant formula.  ``check_relation`` computes the bracket of two
instantiated generators and compares it, coefficient by coefficient, with
the printed linear combination.  The printed formulas are *measured*, not
trusted: a mismatch is reported with both coefficients.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._window import as_fraction
from .errors import OutOfModel, ZeroBasePoint
from .field import VectorField, bracket, vf_from_series
from .series import (
    TruncatedSeries,
    at_precision,
    binomial_power,
    elementary,
    ts_mul,
    ts_pow,
)

__all__ = [
    "FAMILIES",
    "DEFAULT_BASE_POINTS",
    "GeneratorSpec",
    "RelationReport",
    "instantiate",
    "check_relation",
    "run_suite",
    "format_report",
    "suite_passed",
]

FAMILIES = ("B1", "B2", "B3", "B4", "B5", "B6", "B7")
DEFAULT_BASE_POINTS = (Fraction(1), Fraction(2), Fraction(-1, 2))

# generator kinds per family and the bracket relations checked for each
_KINDS = {
    "B1": ("L",),
    "B2": ("L", "M"),
    "B3": ("L",),
    "B4": ("L", "M"),
    "B5": ("L",),
    "B6": ("L",),
    "B7": ("L",),
}
_RELATIONS = {
    "B1": ("LL",),
    "B2": ("LL", "LM", "MM"),
    "B3": ("LL",),
    "B4": ("LL", "LM", "MM"),
    "B5": ("LL",),
    "B6": ("LL",),
    "B7": ("LL",),
}
_ARITY = {"B1": 1, "B2": 1, "B3": 1, "B4": 2, "B5": 2, "B6": 2, "B7": 2}


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    params: tuple
    kind: str = "L"
    base_point: Fraction = Fraction(1)
    prec: int = 16

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.kind not in _KINDS[self.family]:
            raise ValueError(f"{self.family} has no generator kind {self.kind!r}")
        if len(self.params) != _ARITY[self.family]:
            raise ValueError(f"{self.family} takes {_ARITY[self.family]} indices")
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        object.__setattr__(self, "base_point", as_fraction(self.base_point))


@dataclass(frozen=True)
class RelationReport:
    family: str
    relation: str
    left: tuple
    right: tuple
    status: str  # Pass | Fail | Skipped
    index: int | None = None
    lhs_coeff: Fraction | None = None
    rhs_coeff: Fraction | None = None
    reason: str | None = None
    base_point: Fraction | None = None

    def __str__(self):
        return format_report(self)


def _tpow(n: int, w: int) -> TruncatedSeries:
    return TruncatedSeries.monomial(n, w)


def _builder(family: str, kind: str, params: tuple, a: Fraction):
    """Function of the working precision returning the coefficient series f."""
    if family in ("B1", "B2"):
        (n,) = params
        fun = "sin" if kind == "L" else "cos"
        return lambda w: elementary(fun, n, w).scale(2)
    if family == "B3":
        (n,) = params
        return lambda w: elementary("exp", n, w)
    if family == "B4":
        m, n = params
        fun = "sin" if kind == "L" else "cos"
        return lambda w: ts_mul(elementary(fun, m, w), elementary("exp", n, w))
    if family == "B5":
        m, n = params
        return lambda w: ts_mul(_tpow(n, w), elementary("exp", m, w))
    if family == "B6":
        m, n = params
        if a == 0 and n < 0:
            raise OutOfModel("(t + 0)^n with n < 0 is not a Laurent series at 0")
        return lambda w: ts_mul(_tpow(m, w), binomial_power(a, n, w))
    if family == "B7":
        m, n = params
        return lambda w: ts_mul(
            ts_pow(elementary("sin", 1, w), m), ts_pow(elementary("cos", 1, w), n)
        )
    raise ValueError(family)


@lru_cache(maxsize=None)
def _instantiate(family, kind, params, a, prec) -> VectorField:
    try:
        f = at_precision(_builder(family, kind, params, a), prec + 1)
    except ZeroBasePoint as exc:
        raise OutOfModel(str(exc)) from None
    return vf_from_series(f)


def instantiate(spec: GeneratorSpec) -> VectorField:
    """The generator as a vector field known up to ``L[spec.prec]``."""
    return _instantiate(spec.family, spec.kind, spec.params, spec.base_point, spec.prec)


def _half(x) -> Fraction:
    return Fraction(x, 2)


def _printed_rhs(family: str, relation: str, p: tuple, q: tuple) -> list:
    """The printed right-hand side as ``[(coeff, kind, params), ...]``."""
    if family in ("B1", "B2", "B3"):
        (i,), (j,) = p, q
        if family == "B3":
            return [(j - i, "L", (i + j,))]
        if relation == "LL":
            return [(j - i, "L", (i + j,)), (i + j, "L", (i - j,))]
        if relation == "LM":
            return [(j - i, "M", (i + j,)), (-(i + j), "M", (i - j,))]
        return [(i - j, "L", (i + j,)), (i + j, "L", (i - j,))]
    (m, n), (k, l) = p, q
    if family == "B4":
        s, d = (m + k, n + l), (m - k, n + l)
        if relation == "LL":
            return [
                (_half(k - m), "L", s),
                (_half(k + m), "L", d),
                (_half(n - l), "M", s),
                (_half(l - n), "M", d),
            ]
        if relation == "LM":
            return [
                (_half(k - m), "M", s),
                (-_half(k + m), "M", d),
                (_half(l - n), "L", s),
                (_half(l - n), "L", d),
            ]
        return [
            (_half(m - k), "L", s),
            (_half(k + m), "L", d),
            (_half(l - n), "M", s),
            (_half(l - n), "M", d),
        ]
    if family == "B5":
        return [(k - m, "L", (m + k, n + l)), (l - n, "L", (m + k, n + l - 1))]
    if family == "B6":
        return [(k - m, "L", (m + k - 1, n + l)), (l - n, "L", (m + k, n + l - 1))]
    return [(k - m, "L", (m + k - 1, n + l + 1)), (-(l - n), "L", (m + k + 1, n + l - 1))]


def _canonical(family: str, kind: str, params: tuple) -> tuple[int, tuple]:
    """Rewrite a negative trigonometric index with ``L_{-i} = -L_i``, ``M_{-i} = M_i``."""
    if family in ("B1", "B2", "B4") and params[0] < 0:
        flipped = (-params[0],) + tuple(params[1:])
        return (-1 if kind == "L" else 1), flipped
    return 1, params


def check_relation(family: str, relation: str, p, q, prec: int = 16, base_point=1) -> RelationReport:
    p, q = tuple(p), tuple(q)
    a = as_fraction(base_point)
    bp = a if family == "B6" else None
    try:
        x = _instantiate(family, relation[0], p, a, prec)
        y = _instantiate(family, relation[1], q, a, prec)
        lhs = bracket(x, y)
        rhs = VectorField.zero(prec)
        for coeff, kind, params in _printed_rhs(family, relation, p, q):
            if not coeff:
                continue
            sign, params = _canonical(family, kind, params)
            rhs = rhs + _instantiate(family, kind, params, a, prec).scale(sign * coeff)
    except OutOfModel as exc:
        return RelationReport(family, relation, p, q, "Skipped", reason=str(exc), base_point=bp)
    top = min(lhs.prec, rhs.prec)
    if lhs.is_zero() and rhs.is_zero():
        floor = top
    else:
        floor = min(v.low for v in (lhs, rhs) if not v.is_zero())
    if top < floor and not (lhs.is_zero() and rhs.is_zero()):
        return RelationReport(
            family, relation, p, q, "Skipped", reason="empty shared window", base_point=bp
        )
    ok, at = lhs.agrees_with(rhs)
    if ok:
        return RelationReport(family, relation, p, q, "Pass", base_point=bp)
    return RelationReport(
        family, relation, p, q, "Fail", index=at, lhs_coeff=lhs[at], rhs_coeff=rhs[at], base_point=bp
    )


def _sweep(family: str, bound: int):
    r = range(-bound, bound + 1)
    arity = _ARITY[family]
    for relation in _RELATIONS[family]:
        for flat in itertools.product(r, repeat=2 * arity):
            yield relation, flat[:arity], flat[arity:]


def run_suite(prec: int = 16, bound: int = 3, families=None, base_points=None) -> list[RelationReport]:
    """Every relation of every family with all indices in ``[-bound, bound]``."""
    families = FAMILIES if families is None else tuple(families)
    points = DEFAULT_BASE_POINTS if base_points is None else tuple(map(as_fraction, base_points))
    reports = []
    for family in families:
        for a in points if family == "B6" else (Fraction(1),):
            for relation, p, q in _sweep(family, bound):
                reports.append(check_relation(family, relation, p, q, prec, a))
    return reports


def suite_passed(reports) -> bool:
    return all(r.status != "Fail" for r in reports)


def _tuple(t: tuple) -> str:
    return "(" + ",".join(map(str, t)) + ")"


def format_report(r: RelationReport) -> str:
    head = f"family={r.family}"
    if r.base_point is not None:
        head += f" a={r.base_point}"
    head += f" rel={r.relation} x={_tuple(r.left)} y={_tuple(r.right)} status={r.status}"
    if r.status == "Fail":
        head += f" index={r.index} lhs={r.lhs_coeff} rhs={r.rhs_coeff}"
    elif r.status == "Skipped":
        head += f" reason={r.reason.replace(' ', '_')}"
    return head
