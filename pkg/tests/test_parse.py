from __future__ import annotations

from fractions import Fraction

import pytest

from tiltstab.chow import ch_line_bundle, structure_sheaf
from tiltstab.fano import get_model
from tiltstab.parse import ParseError, parse_class, parse_curve, parse_divisor, parse_scalar
from tiltstab.scalar import sqrt_rational


@pytest.fixture(scope="module")
def m():
    return get_model("blowup-p3-point")


def test_line_bundles(m):
    h, e = m.basis_divisor("h"), m.basis_divisor("e")
    assert parse_class(m, "O") == ch_line_bundle(m, m.zero_divisor())
    assert parse_class(m, "O(2h-e)") == ch_line_bundle(m, h.scale(2) - e)
    assert parse_class(m, "O(-h)") == ch_line_bundle(m, -h)
    assert parse_class(m, "O_e") == structure_sheaf(m, e)


def test_combinations_and_shift(m):
    h, e = m.basis_divisor("h"), m.basis_divisor("e")
    two = parse_class(m, "2O(h) - O(h-e)")
    assert two == ch_line_bundle(m, h).scale(2) - ch_line_bundle(m, h - e)
    assert parse_class(m, "O(h)[1]") == -ch_line_bundle(m, h)
    assert parse_class(m, "O(h)[2]") == ch_line_bundle(m, h)


def test_divisors_and_curves(m):
    h, e = m.basis_divisor("h"), m.basis_divisor("e")
    assert parse_divisor(m, "2h - e") == h.scale(2) - e
    assert parse_divisor(m, "2 h") == h.scale(2)
    assert parse_curve(m, "h^2 + 2e^2") == h * h + (e * e).scale(2)
    assert parse_curve(m, "1/48(h^2+2e^2)") == (h * h + (e * e).scale(2)).scale(Fraction(1, 48))
    assert parse_curve(m, "(2h-e)^2") == (h.scale(2) - e) * (h.scale(2) - e)
    assert parse_class(m, "pt").ch3 == 1


def test_json_class(m):
    ch = parse_class(m, '{"ch0": "1", "ch1": ["1", "0"], "ch2": ["1/2", "0"], "ch3": "1/6"}')
    assert ch == ch_line_bundle(m, m.basis_divisor("h"))


def test_scalars():
    assert parse_scalar("1/2") == Fraction(1, 2)
    assert parse_scalar("1 + 2*sqrt(3)") == 1 + 2 * sqrt_rational(3)
    assert parse_scalar("sqrt(2)/7") == sqrt_rational(2) / 7
    assert parse_scalar("(4 - sqrt(2))/7") == (4 - sqrt_rational(2)) / 7


@pytest.mark.parametrize("text", ["", "O(", "O(h", "q", "O_q", "h^x", "h / h", "O(O)", "{bad json", "2h + @"])
def test_errors(m, text):
    with pytest.raises(ParseError):
        parse_class(m, text)


def test_kind_errors(m):
    with pytest.raises(ParseError):
        parse_divisor(m, "O(h)")
    with pytest.raises(ParseError):
        parse_curve(m, "h")
    with pytest.raises(ParseError):
        parse_scalar("h")
