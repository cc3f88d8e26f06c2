import random
from fractions import Fraction

import pytest

from wittkit import (
    DerivationTable,
    NotInnerAtPrecision,
    ParseError,
    VectorField,
    basis,
    check_derivation,
    failing_pairs,
    format_element,
    format_table,
    parse_element,
    parse_table,
    recover_inner,
    tabulate_inner,
)

from _gen import element


def _table(fn, M=6, prec=10):
    return DerivationTable.from_images({i: fn(i) for i in range(-1, M + 1)})


def test_inner_tables_are_derivations():
    assert check_derivation(tabulate_inner(basis(2, 10), 6, 10)) == (True, None)
    assert check_derivation(_table(lambda i: VectorField.zero(10))) == (True, None)


def test_identity_is_not_a_derivation():
    ok, witness = check_derivation(_table(lambda i: basis(i, 10)))
    # pairs are scanned lexicographically from i = -1
    assert not ok and witness == (-1, 0)
    assert (0, 1) in failing_pairs(_table(lambda i: basis(i, 10)))


def test_recover_examples():
    w = parse_element("L[2] + 3*L[5] @prec 10")
    assert recover_inner(tabulate_inner(w, 6, 10)) == w
    assert recover_inner(_table(lambda i: VectorField.zero(10))).is_zero()
    assert format_element(recover_inner(tabulate_inner(basis(0, 10), 6, 10))) == "L[0] @prec 10"


def test_recover_rejects_outer_map():
    with pytest.raises(NotInnerAtPrecision) as err:
        recover_inner(_table(lambda i: basis(i, 10)))
    assert err.value.index is not None


def test_roundtrip_and_uniqueness():
    rng = random.Random(21)
    for _ in range(25):
        w = element(rng, 10)
        got = recover_inner(tabulate_inner(w, 8, 10))
        assert got == w
        # ad(w - w') = 0 on the table forces w = w'
        diff = tabulate_inner(w - got, 8, 10)
        assert all(v.is_zero() for v in diff.images.values())


def test_table_must_cover_range():
    with pytest.raises(ValueError):
        DerivationTable({-1: basis(-1), 1: basis(1)}, 1, 16)


def test_table_text_roundtrip():
    table = tabulate_inner(parse_element("L[-1] + 1/2*L[3] @prec 8"), 4, 8)
    text = format_table(table.images)
    assert text.startswith("@prec ")
    back = parse_table(text)
    assert back == dict(table.images)
    assert parse_table("# comment\n@prec 5\nD L[0] = L[1]  # trailing\n") == {0: parse_element("L[1] @prec 5")}


@pytest.mark.parametrize(
    "bad",
    ["D L[0] = L[1]\n", "@prec 4\nD L[0] = L[\n", "@prec 4\nX L[0] = L[1]\n", "@prec 4\n", "@prec 3\nD L[0] = 0\nD L[0] = 0\n"],
)
def test_table_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_table(bad)


def test_perturbation_detected():
    w = parse_element("L[-1] + 2*L[1] - L[4] @prec 10")
    images = dict(tabulate_inner(w, 8, 10).images)
    images[3] = images[3] + basis(6, images[3].prec, Fraction(1, 7))
    ok, witness = check_derivation(DerivationTable.from_images(images))
    assert not ok and 3 in (witness[0], witness[1], witness[0] + witness[1])
