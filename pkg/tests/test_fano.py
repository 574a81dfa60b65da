from __future__ import annotations

from decimal import Decimal, getcontext
from fractions import Fraction

import pytest

from tiltstab.fano import (
    IndexOneConstants,
    blowup_critical_point,
    builtin_models,
    c0_blowup,
    gamma_for,
    get_model,
    index1_constants,
    index2_functions,
    minimize_cubic,
    model_names,
)
from tiltstab.rr import todd
from tiltstab.scalar import Scalar, sqrt_rational
from tiltstab.tilt import GammaClass

getcontext().prec = 50

C0 = Scalar(Fraction(-3, 98), Fraction(10, 1323), 30)
INV_SQRT7 = 1 / sqrt_rational(7)


def test_builtin_entries():
    entries = builtin_models()
    assert [e.model.name for e in entries] == model_names()
    for e in entries:
        assert e.gamma.dot_h.sign() >= 0
        assert todd(e.model).td3 == 1
        assert e.notes


@pytest.mark.parametrize(
    "name,H3,d",
    [
        ("p3", 1, 64),
        ("quadric-q3", 2, 54),
        ("p1xp1xp1", 6, 48),
        ("p-tp2", 6, 48),
        ("blowup-p3-point", 7, 56),
        ("blowup-p3-line", 54, 54),
        ("p1xp2", 54, 54),
        ("p2-bundle-o-o2", 62, 62),
        ("p1p1-bundle-o-o11", 52, 52),
    ],
)
def test_degrees(name, H3, d):
    m = get_model(name)
    assert m.H3 == H3
    assert m.anticanonical_degree() == d


def test_unknown_model():
    with pytest.raises(KeyError):
        get_model("p4")


def test_c0_closed_form():
    assert c0_blowup() == C0
    b = blowup_critical_point()
    assert 21 * b * b + 6 * b - 1 == 0
    assert 0 < b < INV_SQRT7
    _, g = index2_functions(C0, b)
    assert g == 0


def test_c0_oracle_decimal():
    # independent float-free oracle: golden-section search of g_0 on [0, 1/sqrt 7]
    def g0(x):
        return Decimal(7) / 6 * x**3 + x * x / 2 - x / 6

    lo, hi = Decimal(0), 1 / Decimal(7).sqrt()
    phi = (Decimal(5).sqrt() - 1) / 2
    for _ in range(200):
        a = hi - phi * (hi - lo)
        b = lo + phi * (hi - lo)
        if g0(a) < g0(b):
            hi = b
        else:
            lo = a
    assert abs(-g0(lo) - Decimal(float(C0))) < Decimal("1e-15")


def test_g_nonnegative_at_c0():
    hi = Fraction(37796447, 100000000)  # just below 1/sqrt(7)
    assert hi < INV_SQRT7
    for i in range(1, 101):
        b = hi * Fraction(i, 101)
        f, g = index2_functions(C0, b)
        assert g.sign() >= 0
        assert f >= g


def test_c0_is_minimal():
    for eps in (Fraction(1, 10**3), Fraction(1, 10**6)):
        _, g = index2_functions(C0 - eps, blowup_critical_point())
        assert g.sign() < 0


def test_minimize_cubic():
    assert minimize_cubic((0, 1, 0, 0), -1, 2) == (0, 0)
    assert minimize_cubic((1, 0, -3, 0), 0, 2) == (-2, 1)
    v, x = minimize_cubic((0, 0, 1, 5), sqrt_rational(2), 3)
    assert x == sqrt_rational(2) and v == 5 + sqrt_rational(2)


@pytest.mark.parametrize("H3", [4, 6, 10, 12, 16, 22, 30, 40, 48, 52, 54, 62, 64])
def test_index1_constants(H3):
    c = index1_constants(H3)
    assert c.g(0) == Fraction(-1, H3)
    assert c.g(1) == Fraction(1, H3)
    assert c.g(Fraction(1, 2)) == 0
    assert c.g(c.beta0) == 0
    assert Fraction(1, 2) <= c.beta0 <= 1
    if H3 <= 48:
        assert c.beta0 == Fraction(1, 2)
    else:
        # the other roots solve b^2 - b + 12/H3 = 0
        assert c.beta0 == (1 + sqrt_rational(1 - Fraction(48, H3))) / 2
    assert c.C0 >= Fraction(1, 8) and c.C0 >= Fraction(1, 12) + Fraction(2, H3)


def test_beta0_54():
    assert index1_constants(54).beta0 == Fraction(2, 3)


@pytest.mark.parametrize("H3", [4, 6, 22, 48, 54, 62])
def test_index1_constraints(H3):
    c = index1_constants(H3)
    grid = [c.beta0 * Fraction(i, 200) for i in range(201)]
    unit = [Fraction(i, 200) for i in range(201)]
    for b in unit:
        assert c.f(c.C0, b).sign() >= 0
    for b in grid:
        assert c.l(c.C0, b).sign() >= 0
        assert c.h(c.C0, b) >= c.l(c.C0, b)
    for eps in (Fraction(1, 10**3), Fraction(1, 10**6)):
        C = c.C0 - eps
        violated = C * H3 < Fraction(H3, 12) + 2
        for _, fn, lo, hi in c.constraints(C):
            pts = [lo + (hi - lo) * Fraction(i, 200) for i in range(201)]
            violated = violated or any(fn(b).sign() < 0 for b in pts)
        assert violated


def test_index1_rejects_small_degree():
    with pytest.raises(ValueError):
        index1_constants(2)


def test_gamma_for():
    assert gamma_for(get_model("p1xp1xp1")).gamma.is_zero()
    assert gamma_for(get_model("p-tp2")).gamma.is_zero()
    assert gamma_for(get_model("p3")).gamma.is_zero()
    m = get_model("blowup-p3-point")
    h, e = m.basis_divisor("h"), m.basis_divisor("e")
    want = (h * h + e * e).scale(Fraction(1, 6)) + (m.h * m.h).scale(C0)
    assert gamma_for(m).gamma == want
    p = get_model("p1xp2")
    want = (p.h * p.h).scale(index1_constants(54).C0) - todd(p).td2
    assert gamma_for(p).gamma == want
    for name in model_names():
        g = gamma_for(get_model(name))
        assert isinstance(g, GammaClass) and g.dot_h.sign() >= 0


def test_index_one_dataclass():
    c = IndexOneConstants(Fraction(10), Scalar(Fraction(1, 2)), Scalar(1))
    assert c.f(0, 1) == 0 and c.l(1, 0) == 0
