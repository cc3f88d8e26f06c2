import math
import random
from fractions import Fraction

import pytest

from wittkit import (
    Automorphism,
    ImageTable,
    InconsistentHead,
    NotAutomorphism,
    NotInFiltrationOne,
    ParseError,
    ZeroElement,
    ZeroScale,
    aut_apply,
    aut_compose,
    aut_factorize,
    aut_invert,
    basis,
    bracket,
    exp_ad,
    format_automorphism,
    format_element,
    leading_coefficients_conjugate,
    normal_form,
    parse_automorphism,
    parse_element,
    residue_probe,
    scale_apply,
    solve_exp_conjugator,
    tabulate_images,
)

from _gen import element, rat

SCALES = [Fraction(b) for b in (1, -1, 2, -2, 3)] + [Fraction(1, 2)]


def naive_exp_ad(x, y, terms=30):
    """Fixed-length sum, no early exit (oracle for the adaptive loop)."""
    total, term = y, y
    for k in range(1, terms):
        term = bracket(x, term)
        total = total + term / math.factorial(k)
    return total


def test_exp_ad_example():
    assert format_element(exp_ad(basis(1), basis(-1))) == "L[-1] - 2*L[0] + L[1] @prec 15"


def test_exp_ad_matches_fixed_length_sum():
    rng = random.Random(11)
    for _ in range(20):
        x = element(rng, 10, low=(1, 2))
        y = element(rng, 10)
        assert exp_ad(x, y).agrees_with(naive_exp_ad(x, y))[0]


def test_exp_ad_rejects_low_valuation():
    with pytest.raises(NotInFiltrationOne):
        exp_ad(basis(0), basis(1))
    with pytest.raises(NotInFiltrationOne):
        Automorphism(basis(0))
    with pytest.raises(ZeroScale):
        Automorphism(basis(1), 0)


def test_scale_apply():
    y = parse_element("L[-1] + L[0] + L[2] @prec 4")
    assert scale_apply(2, y).to_dict() == {-1: Fraction(1, 2), 0: 1, 2: 4}


def test_solve_exp_conjugator_examples():
    x = solve_exp_conjugator(parse_element("L[0] - L[1] @prec 12"), 0, 1)
    assert x.to_dict() == {1: 1}
    with pytest.raises(InconsistentHead):
        solve_exp_conjugator(parse_element("L[-1] + L[0]"), 0, 1)


def test_solve_exp_conjugator_roundtrip():
    rng = random.Random(5)
    for _ in range(30):
        x = element(rng, 10, low=(1, 3))
        a_m1, a0 = rng.choice([(0, 1), (1, 0), (1, 2), (-2, 3)])
        head = basis(-1, 12, a_m1) + basis(0, 12, a0)
        target = exp_ad(x, head)
        found = solve_exp_conjugator(target, a_m1, a0)
        assert exp_ad(found, head).agrees_with(target)[0]


def test_identity_and_apply():
    ident = Automorphism.identity(12)
    y = parse_element("L[-1] + 3*L[4] @prec 12")
    assert aut_apply(ident, y).agrees_with(y)[0]
    assert str(ident) == "aut{ b = 1; x = 0 @prec 12 }"


def test_factorize_example_and_rejections():
    sigma = Automorphism(basis(1, 12), 2)
    images = tabulate_images(sigma, range(-1, 11), 12)
    assert isinstance(images, ImageTable)
    assert format_automorphism(aut_factorize(images)) == "aut{ b = 2; x = L[1] @prec 12 }"
    bad = images.as_dict()
    bad[0] = bad[0] + basis(-1, bad[0].prec)
    with pytest.raises(NotAutomorphism):
        aut_factorize(bad)
    # sigma(L[0]) fine, but L[2] image not consistent with a single b
    bad = images.as_dict()
    bad[2] = bad[2] + basis(5, bad[2].prec)
    with pytest.raises(NotAutomorphism):
        aut_factorize(bad)


def test_scale_only_factorization():
    images = {i: basis(i, 10, Fraction(3) ** i) for i in range(-1, 6)}
    sigma = aut_factorize(images)
    assert sigma.b == 3 and sigma.x.is_zero()


def test_group_law():
    s = Automorphism(basis(1, 10), 2)
    ss = aut_compose(s, s, 10)
    assert (ss.b, ss.x.to_dict()) == (4, {1: 3})
    e = aut_compose(s, aut_invert(s, 10), 10)
    assert e.b == 1 and e.x.is_zero()


def test_compose_and_invert_act_correctly():
    rng = random.Random(9)
    for _ in range(8):
        s = Automorphism(element(rng, 10, low=(1, 2)), rng.choice(SCALES))
        t = Automorphism(element(rng, 10, low=(1, 3)), rng.choice(SCALES))
        st = aut_compose(s, t, 10)
        y = element(rng, 8)
        assert aut_apply(st, y).agrees_with(aut_apply(s, aut_apply(t, y)))[0]
        inv = aut_invert(s, 10)
        assert aut_apply(inv, aut_apply(s, y)).agrees_with(y)[0]


def test_automorphisms_preserve_bracket():
    rng = random.Random(13)
    for _ in range(10):
        s = Automorphism(element(rng, 10, low=(1, 3)), rng.choice(SCALES))
        y, z = element(rng, 10), element(rng, 10)
        lhs = aut_apply(s, bracket(y, z))
        rhs = bracket(aut_apply(s, y), aut_apply(s, z))
        assert lhs.agrees_with(rhs)[0]


def test_normal_form_examples():
    r = normal_form(parse_element("L[-1] + L[5]"))
    assert r.solved and r.valuation == -1
    assert exp_ad(r.conjugator, basis(-1, 16)).agrees_with(parse_element("L[-1] + L[5]"))[0]
    r = normal_form(parse_element("L[1] + L[2]"))
    assert r.status == "Obstructed" and r.obstruction == (2, 1)
    assert str(r).endswith("status = Obstructed(2, 1) }")
    assert normal_form(basis(1)).solved
    with pytest.raises(ZeroElement):
        normal_form(basis(20))


def test_normal_form_above_obstruction_still_solves():
    # obstruction at index 2 is pinned; the solve continues above it
    y = exp_ad(basis(2, 12, 3), parse_element("L[1] + 5*L[2] @prec 12"))
    r = normal_form(y)
    assert r.obstruction == (2, 5)
    assert r.conjugator[2] == 3


def test_leading_coefficient_predicate():
    assert leading_coefficients_conjugate(1, 4, 2)
    assert not leading_coefficients_conjugate(1, 2, 2)
    assert leading_coefficients_conjugate(1, -8, 3)
    assert not leading_coefficients_conjugate(1, -4, 2)
    assert leading_coefficients_conjugate(2, Fraction(1, 2), -1)
    assert leading_coefficients_conjugate(3, 3, 0) and not leading_coefficients_conjugate(3, 2, 0)


def test_residue_probe():
    assert residue_probe(parse_element("L[1] + 3*L[2]")) == -3
    # invariant under a tangent-to-identity conjugation
    y = parse_element("L[1] + 3*L[2] @prec 14")
    z = exp_ad(basis(3, 14, 2), y)
    assert residue_probe(z) == residue_probe(y)


def test_automorphism_text_roundtrip():
    rng = random.Random(2)
    for _ in range(10):
        s = Automorphism(element(rng, 8, low=(1, 3)), rat(rng, nonzero=True))
        assert parse_automorphism(format_automorphism(s), 8) == s
    with pytest.raises(ParseError):
        parse_automorphism("aut{ b = 2 }")
    with pytest.raises(ParseError):
        parse_automorphism("aut{ b = 2; x = L[ }")
