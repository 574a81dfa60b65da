"""Built-in Fano threefold models and the constants behind their Gamma classes."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable

from .chow import ThreefoldModel, model_from_dict
from .rr import todd
from .scalar import Scalar, as_scalar, sqrt_rational
from .tilt import GammaClass

__all__ = [
    "FanoEntry",
    "IndexOneConstants",
    "builtin_models",
    "get_model",
    "model_names",
    "index2_functions",
    "c0_blowup",
    "blowup_critical_point",
    "index1_constants",
    "gamma_for",
    "minimize_cubic",
]

_MODEL_FILES = (
    "p3",
    "quadric-q3",
    "p1xp1xp1",
    "p-tp2",
    "blowup-p3-point",
    "blowup-p3-line",
    "p1xp2",
    "p2-bundle-o-o2",
    "p1p1-bundle-o-o11",
)

_NOTES = {
    "p3": "Picard rank one, Gamma = 0",
    "quadric-q3": "Picard rank one, Gamma = 0",
    "p1xp1xp1": "index two, Gamma = 0",
    "p-tp2": "index two, Gamma = 0",
    "blowup-p3-point": "index two, Gamma = (h^2+e^2)/6 + C0 H^2",
    "blowup-p3-line": "index one, Gamma = C0 H^2 - td2",
    "p1xp2": "index one, Gamma = C0 H^2 - td2",
    "p2-bundle-o-o2": "index one, Gamma = C0 H^2 - td2",
    "p1p1-bundle-o-o11": "index one, Gamma = C0 H^2 - td2",
}


@dataclass(frozen=True, eq=False)
class FanoEntry:
    model: ThreefoldModel
    gamma: GammaClass
    notes: str


_CACHE: dict[str, ThreefoldModel] = {}


def _load(name: str) -> ThreefoldModel:
    if name not in _CACHE:
        text = resources.files("tiltstab").joinpath("models").joinpath(f"{name}.json").read_text("utf-8")
        _CACHE[name] = model_from_dict(json.loads(text))
    return _CACHE[name]


def model_names() -> list[str]:
    return list(_MODEL_FILES)


def get_model(name: str) -> ThreefoldModel:
    if name not in _MODEL_FILES:
        raise KeyError(f"unknown model {name!r}; known: {', '.join(_MODEL_FILES)}")
    return _load(name)


def builtin_models() -> list[FanoEntry]:
    out = []
    for name in _MODEL_FILES:
        m = _load(name)
        out.append(FanoEntry(m, gamma_for(m), _NOTES[name]))
    return out


# -- exact minimization of cubics -----------------------------------------


def minimize_cubic(coeffs, lo, hi) -> tuple[Scalar, Scalar]:
    """``(min value, argmin)`` of ``c3 b^3 + c2 b^2 + c1 b + c0`` on ``[lo, hi]``.

    Coefficients must be rational; the endpoints may be quadratic irrationals
    from any field.  Candidates are the endpoints and the real critical points
    inside the interval, each evaluated in its own field and compared exactly.
    """
    c3, c2, c1, c0 = (as_scalar(c).rational() for c in coeffs)
    lo, hi = as_scalar(lo), as_scalar(hi)

    def p(x):
        return ((c3 * x + c2) * x + c1) * x + c0

    cands = [lo, hi]
    a, b, c = 3 * c3, 2 * c2, c1
    if a != 0:
        disc = b * b - 4 * a * c
        if disc >= 0:
            r = sqrt_rational(disc)
            cands += [(-b + r) / (2 * a), (-b - r) / (2 * a)]
    elif b != 0:
        cands.append(Scalar(-c / b))
    best = None
    for x in cands:
        if x < lo or x > hi:
            continue
        v = p(x)
        if best is None or v < best[0]:
            best = (v, x)
    return best


# -- index two -------------------------------------------------------------


def index2_functions(C, beta) -> tuple[Scalar, Scalar]:
    """``(f_C(beta), g_C(beta))`` for the blow-up of P^3 in a point."""
    C, b = as_scalar(C), as_scalar(beta)
    q = b * b / 2 + C
    tail = b * (7 * b * b - 1) / 6
    return 7 * q * (1 - b) / 2 + tail, q + tail


def blowup_critical_point() -> Scalar:
    """Positive root of ``21 b^2 + 6 b - 1``."""
    return (Scalar(-3) + sqrt_rational(30)) / 21


def c0_blowup() -> Scalar:
    """Smallest ``C >= 0`` with ``g_C >= 0`` on ``[0, 1/sqrt(7)]``."""
    # g_C - C = 7/6 b^3 + 1/2 b^2 - 1/6 b
    value, _ = minimize_cubic((Fraction(7, 6), Fraction(1, 2), Fraction(-1, 6), 0), 0, 1 / sqrt_rational(7))
    return -value if value.sign() < 0 else Scalar(0)


# -- index one -------------------------------------------------------------


@dataclass(frozen=True)
class IndexOneConstants:
    H3: Fraction
    beta0: Scalar
    C0: Scalar

    def f(self, C, beta) -> Scalar:
        b = as_scalar(beta)
        return b * b / 2 - b / 2 + as_scalar(C)

    def g(self, beta) -> Scalar:
        b = as_scalar(beta)
        H3 = self.H3
        return b * b * b / 6 - b * b / 4 + b * (Fraction(1, 12) + 2 / H3) - 1 / H3

    def h(self, C, beta) -> Scalar:
        b = as_scalar(beta)
        return self.f(C, b) * (1 - b) / 2 + self.g(b)

    def l(self, C, beta) -> Scalar:
        return self.f(C, beta) / self.H3 + self.g(beta)

    def constraints(self, C) -> list[tuple[str, Callable[[Scalar], Scalar], Scalar, Scalar]]:
        """The defining constraints on C as ``(name, function, lo, hi)``."""
        return [
            ("f >= 0 on [0, 1]", lambda b: self.f(C, b), Scalar(0), Scalar(1)),
            ("l >= 0 on [0, beta0]", lambda b: self.l(C, b), Scalar(0), self.beta0),
        ]


def _g_coeffs(H3: Fraction) -> tuple[Fraction, ...]:
    return (Fraction(1, 6), Fraction(-1, 4), Fraction(1, 12) + 2 / H3, -1 / H3)


def _largest_root_in_unit_interval(H3: Fraction) -> Scalar:
    c3, c2, c1, c0 = _g_coeffs(H3)
    half = Fraction(1, 2)
    # synthetic division by (b - 1/2); the remainder must vanish
    q2 = c3
    q1 = c2 + half * q2
    q0 = c1 + half * q1
    rem = c0 + half * q0
    if rem != 0:
        raise ArithmeticError("1/2 is not a root of g_X")
    roots = [Scalar(half)]
    disc = q1 * q1 - 4 * q2 * q0
    if disc >= 0:
        r = sqrt_rational(disc)
        roots += [(-q1 + r) / (2 * q2), (-q1 - r) / (2 * q2)]
    inside = [x for x in roots if 0 <= x <= 1]
    best = inside[0]
    for x in inside[1:]:
        if x > best:
            best = x
    return best


def index1_constants(H3) -> IndexOneConstants:
    H3 = Fraction(as_scalar(H3).rational())
    if H3 < 4:
        raise ValueError(f"H^3 = {H3} is below 4")
    beta0 = _largest_root_in_unit_interval(H3)
    bound_td2 = Scalar(Fraction(1, 12) + 2 / H3)
    f_min, _ = minimize_cubic((0, Fraction(1, 2), Fraction(-1, 2), 0), 0, 1)
    c3, c2, c1, c0 = _g_coeffs(H3)
    l_min, _ = minimize_cubic((c3, c2 + 1 / (2 * H3), c1 - 1 / (2 * H3), c0), 0, beta0)
    C0 = Scalar(0)
    for cand in (bound_td2, -f_min, -H3 * l_min):
        if cand > C0:
            C0 = cand
    return IndexOneConstants(H3, beta0, C0)


# -- Gamma -----------------------------------------------------------------


def gamma_for(entry) -> GammaClass:
    m = entry.model if isinstance(entry, FanoEntry) else entry
    if m.r == 1:
        return GammaClass.zero(m)
    if m.fano_index == 2:
        if m.name == "blowup-p3-point":
            hh = m.basis_divisor("h")
            ee = m.basis_divisor("e")
            H = m.h
            gamma = (hh * hh + ee * ee).scale(Fraction(1, 6)) + (H * H).scale(c0_blowup())
            return GammaClass(gamma)
        return GammaClass.zero(m)
    if m.fano_index == 1:
        consts = index1_constants(m.H3)
        H = m.h
        return GammaClass((H * H).scale(consts.C0) - todd(m).td2)
    raise ValueError(f"no Gamma construction for model {m.name!r}")
