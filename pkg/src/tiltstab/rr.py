"""Todd class and Hirzebruch-Riemann-Roch on a numerical threefold model."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chow import (
    ChernCharacter,
    CurveClass,
    DivisorClass,
    ThreefoldModel,
    frobenius_scale,
    graded_product,
    validate_model,
)
from .scalar import Scalar

__all__ = [
    "ToddClass",
    "InvalidModelError",
    "todd",
    "euler_char",
    "euler_pair",
    "dual",
    "frobenius_chi_polynomial",
    "eval_polynomial",
]


class InvalidModelError(ValueError):
    pass


@dataclass(frozen=True)
class ToddClass:
    td1: DivisorClass
    td2: CurveClass
    td3: Scalar


_TODD_CACHE: dict[int, tuple[ThreefoldModel, ToddClass]] = {}


def todd(model: ThreefoldModel) -> ToddClass:
    hit = _TODD_CACHE.get(id(model))
    if hit is not None and hit[0] is model:
        return hit[1]
    problems = validate_model(model)
    if problems:
        raise InvalidModelError("; ".join(problems))
    c1 = model.c1
    c1sq = c1 * c1
    c2 = (c1sq - model.ch2T.scale(2)).scale(Fraction(1, 2))
    td = ToddClass(
        c1.scale(Fraction(1, 2)),
        (c1sq.scale(3) - model.ch2T.scale(2)).scale(Fraction(1, 24)),
        (c1 * c2) / 24,
    )
    _TODD_CACHE[id(model)] = (model, td)
    return td


def euler_char(model: ThreefoldModel, ch: ChernCharacter) -> Scalar:
    """Degree-three part of ``ch . td(T_X)``."""
    td = todd(model)
    return ch.ch3 + td.td1 * ch.ch2 + td.td2 * ch.ch1 + td.td3 * ch.ch0


def dual(ch: ChernCharacter) -> ChernCharacter:
    return ChernCharacter(ch.ch0, -ch.ch1, ch.ch2, -ch.ch3)


def euler_pair(model: ThreefoldModel, f: ChernCharacter, e: ChernCharacter) -> Scalar:
    """``chi(F, E)`` computed from ``ch(F)^dual . ch(E)``."""
    return euler_char(model, graded_product(dual(f), e))


def frobenius_chi_polynomial(model: ThreefoldModel, ch: ChernCharacter) -> tuple[Scalar, ...]:
    """Coefficients ``(c3, c2, c1, c0)`` of ``m -> chi(frobenius_scale(ch, m))``."""
    td = todd(model)
    return (ch.ch3, td.td1 * ch.ch2, td.td2 * ch.ch1, td.td3 * ch.ch0)


def eval_polynomial(coeffs, x) -> Scalar:
    acc = Scalar(0)
    for c in coeffs:
        acc = acc * x + c
    return acc

