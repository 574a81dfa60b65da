from __future__ import annotations

import dataclasses
import random
from fractions import Fraction

import pytest

from tiltstab.chow import (
    ChernCharacter,
    HContraction,
    ModelMismatchError,
    ch_line_bundle,
    div_square,
    dual_shift,
    frobenius_scale,
    h_contract,
    load_model,
    pair,
    save_model,
    structure_sheaf,
    tensor_line,
    triple,
    twist,
    validate_model,
)
from tiltstab.fano import get_model, model_names
from tiltstab.scalar import Scalar
from tiltstab.tilt import discriminant

rng = random.Random(20240611)


def rand_frac(lo=-5, hi=5):
    return Fraction(rng.randint(lo * 6, hi * 6), rng.choice([1, 2, 3, 6]))


def rand_divisor(m):
    return m.divisor([rand_frac() for _ in range(m.r)])


def rand_ch(m):
    return ChernCharacter(
        Scalar(rand_frac()), rand_divisor(m), m.curve([rand_frac() for _ in range(m.s)]), Scalar(rand_frac())
    )


@pytest.fixture
def blowup():
    return get_model("blowup-p3-point")


@pytest.mark.parametrize("name", model_names())
def test_builtin_models_valid(name):
    assert validate_model(get_model(name)) == []


def test_blowup_intersections(blowup):
    h, e = blowup.basis_divisor("h"), blowup.basis_divisor("e")
    H = blowup.h
    assert triple(blowup, H, H, H) == 7
    assert pair(blowup, H, div_square(blowup, h)) == 2
    # oracle: expand (2h - e)^3 with h^3 = e^3 = 1 and h.e = 0
    assert 8 * 1 - 1 == 7
    assert triple(blowup, h, h, h) == 1 and triple(blowup, e, e, e) == 1
    assert triple(blowup, h, h, e) == 0 and triple(blowup, h, e, e) == 0


def test_p1p1p1_degree():
    m = get_model("p1xp1xp1")
    assert triple(m, m.h, m.h, m.h) == 6


def test_corrupted_product_breaks_triple_symmetry(blowup):
    prod = [list(row) for row in blowup.product]
    prod[0][1] = prod[1][0] = (Fraction(1), Fraction(0))
    bad = dataclasses.replace(blowup, product=tuple(tuple(r) for r in prod))
    assert any(v.startswith("triple symmetry") for v in validate_model(bad))


def test_asymmetric_product(blowup):
    prod = [list(row) for row in blowup.product]
    prod[0][1] = (Fraction(1), Fraction(0))
    bad = dataclasses.replace(blowup, product=tuple(tuple(r) for r in prod))
    assert any(v.startswith("product symmetry") for v in validate_model(bad))


def test_zeroed_tangent_breaks_chi():
    m = get_model("p1xp2")
    bad = dataclasses.replace(m, ch2_tangent=(Fraction(0), Fraction(0)))
    # direct c1.c2/24: c1 = 3h+2f, c2 = c1^2/2 = (9h^2 + 12hf)/2 gives 18/24
    assert any(v.startswith("χ(O_X) = 1") for v in validate_model(bad))


def test_wrong_polarization_flagged(blowup):
    bad = dataclasses.replace(blowup, H=(Fraction(1), Fraction(0)))
    assert any("i_X" in v for v in validate_model(bad))


def test_line_bundle_characters(blowup):
    p3 = get_model("p3")
    assert ch_line_bundle(p3, p3.zero_divisor()) == ChernCharacter(Scalar(1), p3.zero_divisor(), p3.zero_curve(), Scalar(0))
    ch = ch_line_bundle(p3, -p3.h)
    assert (ch.ch0, ch.ch1, ch.ch2, ch.ch3) == (1, -p3.h, p3.curve([Fraction(1, 2)]), Fraction(-1, 6))
    chh = ch_line_bundle(blowup, blowup.basis_divisor("h"))
    assert chh.ch3 == Fraction(1, 6)
    assert blowup.h * chh.ch2 == 1
    assert tuple(h_contract(chh)) == (7, 4, 1, Fraction(1, 6))


def test_structure_sheaf_of_exceptional(blowup):
    e = blowup.basis_divisor("e")
    ch = structure_sheaf(blowup, e)
    assert ch.ch0 == 0 and ch.ch1 == e
    assert ch.ch2 == (e * e).scale(Fraction(-1, 2))
    assert ch.ch3 == Fraction(1, 6)


def test_tensor_line_round_trip():
    p3 = get_model("p3")
    o = ch_line_bundle(p3, p3.zero_divisor())
    assert tensor_line(tensor_line(o, p3.h), -p3.h) == o
    assert tensor_line(o, p3.zero_divisor()) == o


def test_twist_closed_form(blowup):
    # H.ch2^beta for O(mh) equals m^2 - 4 m beta + 7/2 beta^2
    h = blowup.basis_divisor("h")
    for m in range(-3, 4):
        for beta in (Fraction(-1, 3), Fraction(1, 2), Fraction(5, 7)):
            t = twist(ch_line_bundle(blowup, h.scale(m)), beta)
            assert blowup.h * t.ch2 == m * m - 4 * m * beta + Fraction(7, 2) * beta * beta


def test_twist_group_action(blowup):
    ch = rand_ch(blowup)
    assert twist(ch, 0) == ch
    for _ in range(10):
        b, c = rand_frac(), rand_frac()
        assert twist(twist(ch, b), c) == twist(ch, b + c)


def test_twist_matches_exponential(blowup):
    # independent route: multiply by ch(O(-beta H)) for integer beta
    for _ in range(10):
        ch = rand_ch(blowup)
        k = rng.randint(-3, 3)
        assert twist(ch, k) == tensor_line(ch, blowup.h.scale(-k))


def test_dual_shift(blowup):
    o = ch_line_bundle(blowup, blowup.zero_divisor())
    assert dual_shift(o) == -o
    ch = rand_ch(blowup)
    assert dual_shift(dual_shift(ch)) == ch
    chh = ch_line_bundle(blowup, blowup.basis_divisor("h"))
    assert discriminant(dual_shift(chh)) == discriminant(chh) == 2


def test_frobenius_scale(blowup):
    h = blowup.basis_divisor("h")
    chh = ch_line_bundle(blowup, h)
    assert frobenius_scale(chh, 1) == chh
    assert frobenius_scale(chh, 2) == ch_line_bundle(blowup, h.scale(2))
    for _ in range(10):
        ch = rand_ch(blowup)
        m = rng.randint(1, 5)
        v = h_contract(ch)
        assert tuple(h_contract(frobenius_scale(ch, m))) == (v.v0, m * v.v1, m * m * v.v2, m**3 * v.v3)


@pytest.mark.parametrize("name", model_names())
def test_triple_multilinear_symmetric(name):
    m = get_model(name)
    for _ in range(50):
        a, b, c, d = (rand_divisor(m) for _ in range(4))
        k = rand_frac()
        t = triple(m, a, b, c)
        assert t == triple(m, b, c, a) == triple(m, c, a, b) == triple(m, b, a, c)
        assert triple(m, a + d.scale(k), b, c) == t + k * triple(m, d, b, c)


@pytest.mark.parametrize("name", model_names())
def test_line_bundle_homomorphism(name):
    m = get_model(name)
    for _ in range(10):
        d1, d2 = rand_divisor(m), rand_divisor(m)
        assert tensor_line(ch_line_bundle(m, d1), d2) == ch_line_bundle(m, d1 + d2)


@pytest.mark.parametrize("name", ["blowup-p3-point", "p1xp2", "p1xp1xp1"])
def test_discriminant_twist_invariant(name):
    m = get_model(name)
    for _ in range(20):
        ch = rand_ch(m)
        assert discriminant(twist(ch, rand_frac())) == discriminant(ch)
        assert discriminant(tensor_line(ch, m.h.scale(rng.randint(-3, 3)))) == discriminant(ch)


def test_model_mismatch():
    a, b = get_model("p3"), get_model("quadric-q3")
    with pytest.raises(ModelMismatchError):
        a.h + b.h
    with pytest.raises(ModelMismatchError):
        triple(a, a.h, a.h, b.h)


def test_json_round_trip(tmp_path):
    for name in model_names():
        m = get_model(name)
        path = tmp_path / f"{name}.json"
        save_model(m, path)
        again = load_model(path)
        assert validate_model(again) == []
        assert again.pairing == m.pairing and again.product == m.product
        assert again.c1_tangent == m.c1_tangent and again.ch2_tangent == m.ch2_tangent
        assert again.H == m.H and again.fano_index == m.fano_index


def test_ch_dict_round_trip(blowup):
    ch = rand_ch(blowup)
    assert ChernCharacter.from_dict(blowup, ch.to_dict()) == ch


def test_contraction_of():
    v = HContraction.of(7, 4, 1, "1/6")
    assert v.v3 == Fraction(1, 6)
