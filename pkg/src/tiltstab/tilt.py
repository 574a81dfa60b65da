"""Tilt slopes, discriminants, numerical walls and Bogomolov-type functionals.

Everything here is numerical: functions take Chern characters (or their
H-contractions) and return exact :class:`~tiltstab.scalar.Scalar` values.
Whether a class is actually tilt-stable is never decided; callers supply
classes and interpret the signed values.

``alpha`` only ever enters through ``alpha**2``, so irrational ``alpha`` given
as ``sqrt_rational(r)`` keeps all arithmetic inside the rationals.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .chow import ChernCharacter, CurveClass, HContraction, ModelMismatchError, h_contract, twist
from .scalar import Scalar, as_scalar, sqrt_rational

__all__ = [
    "INF",
    "EmptyWallError",
    "ProportionalClassesError",
    "Wall",
    "GammaClass",
    "LiBound",
    "contract",
    "twist_contracted",
    "mu",
    "nu",
    "nu_numerator",
    "discriminant",
    "beta_bar",
    "beta_pm",
    "wall_between",
    "hyperbola_top_check",
    "hyperbola_slope",
    "gamma_inequality",
    "q_form",
    "q_form_partner",
    "q_form_wall",
    "li_threshold",
    "li_bound_check",
]


@total_ordering
class _Infinity:
    """``+inf``: larger than every Scalar, equal only to itself."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("+inf")

    def __str__(self):
        return "+inf"

    __repr__ = __str__


INF = _Infinity()


class EmptyWallError(ValueError):
    """The slope-equality locus has no points with alpha > 0."""


class ProportionalClassesError(ValueError):
    """The two classes have proportional contractions; every point is on the 'wall'."""


def contract(x) -> HContraction:
    if isinstance(x, HContraction):
        return x
    if isinstance(x, ChernCharacter):
        return h_contract(x)
    if isinstance(x, (tuple, list)):
        return HContraction.of(*x)
    raise TypeError(f"expected a Chern character or contraction, got {type(x).__name__}")


def twist_contracted(v: HContraction, beta) -> HContraction:
    b = as_scalar(beta)
    v0, v1, v2, v3 = v
    b2 = b * b / 2
    return HContraction(
        v0,
        v1 - b * v0,
        v2 - b * v1 + b2 * v0,
        v3 - b * v2 + b2 * v1 - b * b2 / 3 * v0,
    )


def mu(ch):
    v = contract(ch)
    if v.v0 == 0:
        return INF
    return v.v1 / v.v0


def nu_numerator(ch, alpha, beta) -> Scalar:
    a = as_scalar(alpha)
    t = twist_contracted(contract(ch), beta)
    return t.v2 - a * a / 2 * t.v0


def nu(ch, alpha, beta):
    a = as_scalar(alpha)
    if a.sign() <= 0:
        raise ValueError("alpha must be positive")
    t = twist_contracted(contract(ch), beta)
    if t.v1 == 0:
        return INF
    return (t.v2 - a * a / 2 * t.v0) / t.v1


def discriminant(ch) -> Scalar:
    v = contract(ch)
    return v.v1 * v.v1 - 2 * v.v0 * v.v2


def _sqrt(x: Scalar) -> Scalar:
    if not x.is_rational:
        raise ValueError(f"square root of irrational discriminant {x}")
    return sqrt_rational(x.rational())


def beta_bar(ch) -> Scalar:
    v = contract(ch)
    if v.v0 != 0:
        d = discriminant(v)
        if d.sign() < 0:
            raise ValueError(f"negative discriminant {d}")
        return (v.v1 - _sqrt(d)) / v.v0
    if v.v1 == 0:
        raise ValueError("beta-bar undefined: H^3 ch0 and H^2 ch1 both vanish")
    return v.v2 / v.v1


def beta_pm(ch) -> tuple[Scalar, Scalar]:
    v = contract(ch)
    if v.v0 == 0:
        raise ValueError("beta-plus/minus need nonzero rank")
    d = discriminant(v)
    if d.sign() < 0:
        raise ValueError(f"negative discriminant {d}")
    m = v.v1 / v.v0
    root = _sqrt(d / (v.v0 * v.v0))
    return m - root, m + root


# -- walls ----------------------------------------------------------------


@dataclass(frozen=True)
class Wall:
    """A numerical wall: ``kind`` is ``"vertical"`` or ``"semicircle"``."""

    kind: str
    beta: Scalar | None = None
    center: Scalar | None = None
    radius_sq: Scalar | None = None

    @classmethod
    def vertical(cls, beta) -> Wall:
        return cls("vertical", beta=as_scalar(beta))

    @classmethod
    def semicircle(cls, center, radius_sq) -> Wall:
        center, radius_sq = as_scalar(center), as_scalar(radius_sq)
        if radius_sq.sign() <= 0:
            raise EmptyWallError(f"radius^2 = {radius_sq} is not positive")
        return cls("semicircle", center=center, radius_sq=radius_sq)

    def contains(self, alpha, beta) -> bool:
        a, b = as_scalar(alpha), as_scalar(beta)
        if a.sign() <= 0:
            return False
        if self.kind == "vertical":
            return b == self.beta
        x = b - self.center
        return x * x + a * a == self.radius_sq

    def top(self) -> tuple[Scalar, Scalar]:
        """``(alpha, beta)`` of the highest point of a semicircle."""
        if self.kind != "semicircle":
            raise ValueError("a vertical wall has no top point")
        return sqrt_rational(self.radius_sq.rational()), self.center

    def sample(self, n: int = 20) -> list[tuple[Scalar, Scalar]]:
        """``n`` exact points ``(alpha, beta)`` on the wall, with rational beta."""
        pts = []
        if self.kind == "vertical":
            for i in range(1, n + 1):
                pts.append((Scalar(Fraction(i, 3)), self.beta))
            return pts
        r2 = self.radius_sq.rational()
        # span = 1/k with k^2 r^2 > 1 keeps offsets inside the circle and denominators small
        k = math.isqrt(math.floor(1 / r2)) + 1
        span = Fraction(1, k)
        for i in range(n):
            u = Fraction(2 * i + 1 - n, n + 1)
            x = span * u
            a2 = r2 - x * x
            pts.append((sqrt_rational(a2), self.center + x))
        return pts

    def to_dict(self) -> dict:
        if self.kind == "vertical":
            return {"kind": "vertical", "beta": str(self.beta)}
        return {"kind": "semicircle", "center": str(self.center), "radius_sq": str(self.radius_sq)}

    def __str__(self):
        if self.kind == "vertical":
            return f"vertical wall beta = {self.beta}"
        return f"semicircle center {self.center}, radius^2 {self.radius_sq}"


def wall_between(v, w) -> Wall:
    """The locus ``nu(v) = nu(w)`` in the upper half plane."""
    v0, v1, v2, _ = contract(v)
    w0, w1, w2, _ = contract(w)
    c = v0 * w1 - w0 * v1
    m02 = v0 * w2 - v2 * w0
    m21 = v2 * w1 - w2 * v1
    if c == 0 and m02 == 0 and m21 == 0:
        raise ProportionalClassesError("the contracted classes are proportional")
    if c != 0:
        center = m02 / c
        return Wall.semicircle(center, center * center + 2 * m21 / c)
    if m02 == 0:
        raise EmptyWallError("both slopes are constant and different")
    return Wall.vertical(m21 / (-m02))


def hyperbola_top_check(v, w) -> bool:
    """Does the top of the wall between v and w lie on ``nu(v) = 0``?"""
    wall = wall_between(v, w)
    if wall.kind != "semicircle":
        raise ValueError("vertical walls have no top point")
    alpha, beta = wall.top()
    return nu_numerator(v, alpha, beta) == 0


def hyperbola_slope(ch, alpha, beta) -> Scalar:
    """``d alpha / d beta`` along ``nu(ch) = 0`` at a point of that curve."""
    a, b = as_scalar(alpha), as_scalar(beta)
    v = contract(ch)
    if a.sign() <= 0:
        raise ValueError("alpha must be positive")
    if v.v0 == 0:
        raise ValueError("rank zero classes have no hyperbola")
    if nu_numerator(v, a, b) != 0:
        raise ValueError(f"({a}, {b}) is not on the curve nu = 0")
    return (b - v.v1 / v.v0) / a


# -- Gamma-modified functionals -------------------------------------------


@dataclass(frozen=True)
class GammaClass:
    gamma: CurveClass

    def __post_init__(self):
        if self.dot_h.sign() < 0:
            raise ValueError(f"Gamma.H = {self.dot_h} is negative")

    @property
    def dot_h(self) -> Scalar:
        return self.gamma.model.h * self.gamma

    @classmethod
    def zero(cls, model) -> GammaClass:
        return cls(model.zero_curve())

    def __str__(self):
        return str(self.gamma)


def _gamma_terms(ch: ChernCharacter, alpha, beta, gamma: GammaClass):
    if gamma.gamma.model is not ch.model:
        raise ModelMismatchError("Gamma and the class live on different models")
    a = as_scalar(alpha)
    t = twist(ch, beta)
    H = ch.model.h
    h2ch1 = H * (H * t.ch1)
    gch1 = t.ch1 * gamma.gamma
    return a, t, h2ch1, gch1


def gamma_inequality(ch: ChernCharacter, alpha, beta, gamma: GammaClass) -> Scalar:
    """``ch3^b - Gamma.ch1^b - (a^2/6) H^2.ch1^b`` (nonpositive when the bound holds)."""
    a, t, h2ch1, gch1 = _gamma_terms(ch, alpha, beta, gamma)
    if a.sign() < 0:
        raise ValueError("alpha must be nonnegative")
    return t.ch3 - gch1 - a * a / 6 * h2ch1


def q_form(ch: ChernCharacter, alpha, beta, gamma: GammaClass) -> Scalar:
    a, t, h2ch1, gch1 = _gamma_terms(ch, alpha, beta, gamma)
    m = ch.model
    H = m.h
    H3 = m.H3
    g = gamma.dot_h
    v0 = H3 * t.ch0
    hch2 = H * t.ch2
    disc = h2ch1 * h2ch1 - 2 * v0 * hch2
    return (
        a * a * (disc + 3 * (g / H3) * v0 * v0)
        + 2 * hch2 * (2 * hch2 - 3 * g * t.ch0)
        - 6 * h2ch1 * (t.ch3 - gch1)
    )


def q_form_partner(ch: ChernCharacter, gamma: GammaClass) -> HContraction:
    """Contracted class whose wall with ``ch`` is the zero locus of ``q_form``."""
    v = h_contract(ch)
    g = gamma.dot_h
    return HContraction(v.v1, 2 * v.v2 - 3 * g * ch.ch0, 3 * v.v3 - 3 * (ch.ch1 * gamma.gamma))


def q_form_wall(ch: ChernCharacter, gamma: GammaClass) -> Wall:
    return wall_between(ch, q_form_partner(ch, gamma))


# -- Li's bound -----------------------------------------------------------


class LiBound(enum.Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    EXEMPT = "exempt"


def li_threshold(model) -> Scalar:
    if model.fano_index is None:
        raise ValueError(f"model {model.name!r} has no Fano index")
    H3 = model.H3
    a = 1 / (H3 * H3)
    b = Scalar(3) / (2 * model.fano_index * H3)
    return a if a <= b else b


def li_bound_check(ch: ChernCharacter, model=None) -> LiBound:
    model = model or ch.model
    v = contract(ch)
    if v.v0 == 0:
        raise ValueError("the bound needs nonzero rank")
    d = discriminant(v)
    if d == 0 and beta_bar(v) == 0 and abs(ch.ch0) == 1:
        return LiBound.EXEMPT
    ratio = d / (v.v0 * v.v0)
    return LiBound.SATISFIED if ratio >= li_threshold(model) else LiBound.VIOLATED
