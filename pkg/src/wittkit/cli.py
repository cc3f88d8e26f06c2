"""``wittkit`` command line.

Exit codes: 0 success, 1 mathematical failure (typed errors, failed checks),
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import automorphism as aut
from . import derivation, structure, subalgebras
from .errors import ParseError, WittError
from .field import DEFAULT_PREC, ELEMENT_GRAMMAR, bracket, format_element, parse_element, vf_from_series
from .series import SERIES_GRAMMAR, format_series, parse_series_expr

COMMANDS = (
    "bracket",
    "exp-ad",
    "aut-apply",
    "aut-compose",
    "aut-invert",
    "aut-factorize",
    "normal-form",
    "check-derivation",
    "recover-inner",
    "ideal-express",
    "locfin-rank",
    "verify-examples",
    "parse",
)


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


# rendering --------------------------------------------------------------------


def _kv_element(x, prefix=""):
    lines = [f"{prefix}prec={x.prec}", f"{prefix}valuation={x.valuation}"]
    lines += [f"{prefix}L[{i}]={c}" for i, c in x.items()]
    return lines


def _render(value, mode: str) -> str:
    if isinstance(value, str):
        return value
    canonical = mode == "canonical"
    from .field import VectorField

    if isinstance(value, VectorField):
        return format_element(value) if canonical else "\n".join(_kv_element(value))
    if isinstance(value, aut.Automorphism):
        if canonical:
            return aut.format_automorphism(value)
        return "\n".join([f"b={value.b}"] + _kv_element(value.x, "x."))
    if isinstance(value, structure.IdealRecipe):
        if canonical:
            return structure.format_recipe(value)
        return "\n".join([f"m={value.m}", f"c={value.c}"] + _kv_element(value.z, "z."))
    if isinstance(value, aut.NormalFormReport):
        if canonical:
            return str(value)
        lines = [f"valuation={value.valuation}", f"leading={value.leading}", f"status={value.status}"]
        if value.obstruction is not None:
            lines += [f"obstruction.index={value.obstruction[0]}", f"obstruction.value={value.obstruction[1]}"]
        return "\n".join(lines + _kv_element(value.conjugator, "conjugator."))
    raise TypeError(type(value))


# argument readers ----------------------------------------------------------------


def _text(token: str) -> str:
    """Inline text, or the contents of ``path`` for a token ``@path``."""
    if token.startswith("@") and not token.startswith("@prec"):
        path = Path(token[1:])
        try:
            return path.read_text(encoding="utf-8").strip()
        except OSError as exc:
            raise _Usage(f"cannot read {path}: {exc.strerror}") from None
    return token


def _element(token, prec):
    return parse_element(_text(token), prec)


def _automorphism(token, prec):
    return aut.parse_automorphism(_text(token), prec)


def _file(args, positional):
    path = args.file or positional
    if not path:
        raise _Usage("a table file is required (--file <path>)")
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from None


# commands ------------------------------------------------------------------------


def _run(args):
    p = args.prec
    cmd = args.command
    if cmd == "bracket":
        return bracket(_element(args.x, p), _element(args.y, p)), 0
    if cmd == "exp-ad":
        return aut.exp_ad(_element(args.x, p), _element(args.y, p)), 0
    if cmd == "aut-apply":
        return aut.aut_apply(_automorphism(args.sigma, p), _element(args.y, p)), 0
    if cmd == "aut-compose":
        return aut.aut_compose(_automorphism(args.sigma, p), _automorphism(args.tau, p), p), 0
    if cmd == "aut-invert":
        return aut.aut_invert(_automorphism(args.sigma, p), p), 0
    if cmd == "aut-factorize":
        images = derivation.parse_table(_file(args, args.path), tag="S")
        return aut.aut_factorize(images), 0
    if cmd == "normal-form":
        return aut.normal_form(_element(args.y, p)), 0
    if cmd in ("check-derivation", "recover-inner"):
        images = derivation.parse_table(_file(args, args.path))
        try:
            table = derivation.DerivationTable.from_images(images)
        except ValueError as exc:
            raise _Usage(str(exc)) from None
        if cmd == "recover-inner":
            return derivation.recover_inner(table), 0
        ok, witness = derivation.check_derivation(table)
        if args.output == "keyvalue":
            lines = [f"derivation={'true' if ok else 'false'}"]
            if witness:
                lines.append(f"witness=({witness[0]},{witness[1]})")
            return "\n".join(lines), 0 if ok else 1
        return ("true" if ok else f"false witness=({witness[0]},{witness[1]})"), 0 if ok else 1
    if cmd == "ideal-express":
        return structure.express_in_ideal(_element(args.x, p), _element(args.y, p)), 0
    if cmd == "locfin-rank":
        r = structure.locfin_rank(_element(args.s, p), _element(args.v, p), args.K)
        return (str(r) if args.output == "canonical" else f"rank={r}"), 0
    if cmd == "verify-examples":
        families = [args.family] if args.family else None
        points = [args.base_point] if args.base_point is not None else None
        reports = subalgebras.run_suite(p, args.bound, families, points)
        counts = {s: sum(r.status == s for r in reports) for s in ("Pass", "Fail", "Skipped")}
        lines = [subalgebras.format_report(r) for r in reports]
        lines.append(f"summary total={len(reports)} pass={counts['Pass']} fail={counts['Fail']} skipped={counts['Skipped']}")
        return "\n".join(lines), 0 if counts["Fail"] == 0 else 1
    if cmd == "parse":
        s = parse_series_expr(args.expr, p)
        if args.field:
            return _render(vf_from_series(s), args.output), 0
        if args.output == "canonical":
            return format_series(s), 0
        return "\n".join([f"prec={s.prec}"] + [f"t^{e}={c}" for e, c in s.items()]), 0
    raise _Usage(f"unknown command {cmd!r}")


def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--prec", type=int, default=DEFAULT_PREC, help="working precision (default 16)")
    common.add_argument("--output", choices=("canonical", "keyvalue"), default="canonical")

    parser = _Parser(prog="wittkit", description="Exact computations in the completed Witt algebra.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, *positional, help=None):
        sp = sub.add_parser(name, parents=[common], help=help)
        for arg in positional:
            sp.add_argument(arg)
        return sp

    add("bracket", "x", "y", help="[x, y]")
    add("exp-ad", "x", "y", help="exp(ad x)(y) for x in W_1")
    add("aut-apply", "sigma", "y", help="apply an automorphism")
    add("aut-compose", "sigma", "tau", help="canonical form of sigma o tau")
    add("aut-invert", "sigma", help="canonical form of the inverse")
    for name in ("aut-factorize", "check-derivation", "recover-inner"):
        sp = add(name, help="read a table file")
        sp.add_argument("path", nargs="?")
        sp.add_argument("--file")
    add("normal-form", "y", help="conjugate to the leading term")
    add("ideal-express", "x", "y", help="certificate that y lies in the ideal of x")
    sp = add("locfin-rank", "s", "v", help="rank of (ad s)^k v, k <= K")
    sp.add_argument("K", type=int)
    sp = add("verify-examples", help="check the B1-B7 structure constants")
    sp.add_argument("--family", choices=subalgebras.FAMILIES)
    sp.add_argument("--bound", type=int, default=3)
    sp.add_argument("--base-point", type=_rational)
    sp = add("parse", "expr", help="expand a series expression")
    sp.add_argument("--field", action="store_true", help="print expr*d/dt as an element")
    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = None
    try:
        args = parser.parse_args(argv)
        value, code = _run(args)
        print(_render(value, args.output))
        return code
    except _Usage as exc:
        _usage(f"usage error: {exc}", None)
        return 2
    except ParseError as exc:
        _usage(f"ParseError: {exc}", getattr(args, "command", None))
        return 2
    except WittError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        _usage(f"usage error: {exc}", getattr(args, "command", None))
        return 2


def _usage(message: str, command) -> None:
    print(message, file=sys.stderr)
    if command is None:
        print(f"commands: {', '.join(COMMANDS)}", file=sys.stderr)
    print(SERIES_GRAMMAR if command == "parse" else ELEMENT_GRAMMAR, file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
