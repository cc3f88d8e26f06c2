import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wittkit import (
    IdealRecipe,
    ParseError,
    PrecisionExhausted,
    VectorField,
    WindowTooSmall,
    ZeroElement,
    basis,
    bracket,
    exact_rank,
    express_in_ideal,
    format_recipe,
    locfin_rank,
    parse_element,
    parse_recipe,
    reduce_valuation,
    solve_transporter,
    verify_recipe,
)

from _gen import element, gauss_rank


def test_reduce_valuation_examples():
    assert reduce_valuation(basis(-1)) == (0, 1, basis(-1))
    m, c, x = reduce_valuation(basis(2))
    assert (m, c, x.to_dict()) == (3, 6, {-1: 1})
    m, c, x = reduce_valuation(parse_element("L[0] + L[1]"))
    assert (m, c, x.to_dict()) == (1, 1, {-1: 1, 0: 2})
    with pytest.raises(ZeroElement):
        reduce_valuation(VectorField.zero(5))


def test_transporter_examples():
    assert solve_transporter(basis(-1), basis(0)).to_dict() == {1: Fraction(1, 2)}
    assert solve_transporter(basis(-1), VectorField.zero(16)).is_zero()
    with pytest.raises(PrecisionExhausted):
        solve_transporter(basis(-1, 5), basis(0, 5), prec=9)
    with pytest.raises(ValueError):
        solve_transporter(basis(0), basis(0))


def test_transporter_residual():
    rng = random.Random(4)
    for _ in range(30):
        x = element(rng, 10, low=(-1, -1))
        x = x / x[-1]
        y = element(rng, 10)
        z = solve_transporter(x, y)
        ok, _ = bracket(x, z).agrees_with(y)
        assert ok and z.get(-1, 0) == 0


def test_recipe_example_and_format():
    r = express_in_ideal(basis(2), basis(0))
    assert (r.m, r.c, r.z.to_dict()) == (3, 6, {1: Fraction(1, 2)})
    assert verify_recipe(basis(2), basis(0), r) == (True, None)
    text = format_recipe(r)
    assert text == "recipe{ m = 3; c = 6; z = 1/2*L[1] @prec 14 }"
    assert parse_recipe(text) == r
    with pytest.raises(ParseError):
        parse_recipe("recipe{ m = 3 }")


def test_rank_examples():
    assert locfin_rank(basis(0, 30), basis(1, 30), 3) == 1
    v = VectorField.from_dict({i: 1 for i in range(-1, 21)}, 20)
    for i0 in (-1, 0, 1, 2):
        for K in range(6):
            assert locfin_rank(basis(i0, 40), v, K) == K + 1
    with pytest.raises(WindowTooSmall):
        locfin_rank(basis(0, 2), basis(1, 2), 8)


@given(
    st.lists(
        st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=4, max_size=4),
        min_size=1,
        max_size=5,
    )
)
@settings(max_examples=150, deadline=None)
def test_bareiss_matches_gauss(rows):
    assert exact_rank(rows) == gauss_rank(rows)


def test_recipe_dataclass_evaluate():
    r = IdealRecipe(0, Fraction(1), basis(1, 8, Fraction(1, 2)))
    assert r.evaluate(basis(-1, 8)).to_dict() == {0: 1}
