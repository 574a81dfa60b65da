"""Numerical intersection theory on a polarized smooth threefold.

A :class:`ThreefoldModel` records a divisor basis, a curve basis, the degree
pairing between them and the product of two divisors as a curve class.  All
Chern character arithmetic (twists, tensoring by line bundles, duals, Frobenius
scaling) is built on top of that data and is exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .scalar import Scalar, as_scalar

__all__ = [
    "ThreefoldModel",
    "DivisorClass",
    "CurveClass",
    "ChernCharacter",
    "HContraction",
    "ModelMismatchError",
    "validate_model",
    "triple",
    "pair",
    "div_square",
    "ch_line_bundle",
    "structure_sheaf",
    "tensor_line",
    "twist",
    "dual_shift",
    "h_contract",
    "frobenius_scale",
    "graded_product",
    "load_model",
    "model_from_dict",
    "model_to_dict",
    "save_model",
]


class ModelMismatchError(ValueError):
    """Classes from two different models were combined."""


def _vec(values: Iterable, n: int | None = None) -> tuple[Scalar, ...]:
    out = tuple(as_scalar(v) for v in values)
    if n is not None and len(out) != n:
        raise ValueError(f"expected {n} coefficients, got {len(out)}")
    return out


@dataclass(eq=False)
class ThreefoldModel:
    name: str
    divisor_basis: tuple[str, ...]
    curve_basis: tuple[str, ...]
    pairing: tuple[tuple[Fraction, ...], ...]
    product: tuple[tuple[tuple[Fraction, ...], ...], ...]
    c1_tangent: tuple[Fraction, ...]
    ch2_tangent: tuple[Fraction, ...]
    H: tuple[Fraction, ...]
    fano_index: int | None = None
    toric: dict | None = field(default=None, repr=False)

    @property
    def r(self) -> int:
        return len(self.divisor_basis)

    @property
    def s(self) -> int:
        return len(self.curve_basis)

    def divisor(self, coeffs: Sequence) -> DivisorClass:
        return DivisorClass(self, _vec(coeffs, self.r))

    def curve(self, coeffs: Sequence) -> CurveClass:
        return CurveClass(self, _vec(coeffs, self.s))

    def basis_divisor(self, name: str) -> DivisorClass:
        i = self.divisor_basis.index(name)
        return self.divisor([int(j == i) for j in range(self.r)])

    def basis_curve(self, name: str) -> CurveClass:
        i = self.curve_basis.index(name)
        return self.curve([int(j == i) for j in range(self.s)])

    def zero_divisor(self) -> DivisorClass:
        return self.divisor([0] * self.r)

    def zero_curve(self) -> CurveClass:
        return self.curve([0] * self.s)

    @property
    def h(self) -> DivisorClass:
        """The polarization as a divisor class."""
        return self.divisor(self.H)

    @property
    def c1(self) -> DivisorClass:
        return self.divisor(self.c1_tangent)

    @property
    def ch2T(self) -> CurveClass:
        return self.curve(self.ch2_tangent)

    @property
    def H3(self) -> Scalar:
        hh = self.h
        return hh * (hh * hh)

    def anticanonical_degree(self) -> Scalar:
        c = self.c1
        return c * (c * c)

    def zero_ch(self) -> ChernCharacter:
        return ChernCharacter(Scalar(0), self.zero_divisor(), self.zero_curve(), Scalar(0))


class _Vector:
    __slots__ = ("model", "coeffs")

    def __init__(self, model: ThreefoldModel, coeffs: tuple[Scalar, ...]):
        self.model = model
        self.coeffs = coeffs

    def _check(self, other) -> None:
        if other.model is not self.model:
            raise ModelMismatchError(
                f"classes from models {self.model.name!r} and {other.model.name!r}"
            )

    def _new(self, coeffs):
        return type(self)(self.model, tuple(coeffs))

    def __add__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        self._check(other)
        return self._new(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        self._check(other)
        return self._new(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return self._new(-a for a in self.coeffs)

    def scale(self, k) -> _Vector:
        k = as_scalar(k)
        return self._new(k * a for a in self.coeffs)

    def __truediv__(self, k):
        return self.scale(1 / as_scalar(k))

    def __eq__(self, other):
        if isinstance(other, type(self)):
            return other.model is self.model and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((id(self.model), self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def _names(self) -> tuple[str, ...]:
        raise NotImplementedError

    def __str__(self):
        terms = []
        for c, name in zip(self.coeffs, self._names()):
            if c == 0:
                continue
            if c == 1:
                terms.append(name)
            elif c == -1:
                terms.append(f"-{name}")
            elif c.is_rational:
                terms.append(f"{c}*{name}")
            else:
                terms.append(f"({c})*{name}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class DivisorClass(_Vector):
    """A divisor class; ``D * D'`` is a curve class, ``D * C`` a number."""

    def _names(self):
        return self.model.divisor_basis

    def __mul__(self, other):
        if isinstance(other, DivisorClass):
            self._check(other)
            m = self.model
            out = [Scalar(0)] * m.s
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b == 0:
                        continue
                    ab = a * b
                    for k, p in enumerate(m.product[i][j]):
                        if p:
                            out[k] = out[k] + ab * p
            return CurveClass(m, tuple(out))
        if isinstance(other, CurveClass):
            self._check(other)
            m = self.model
            total = Scalar(0)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, c in enumerate(other.coeffs):
                    p = m.pairing[i][j]
                    if p and c != 0:
                        total = total + a * c * p
            return total
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented


class CurveClass(_Vector):
    """A curve class (an element of the numerical group of 1-cycles)."""

    def _names(self):
        return self.model.curve_basis

    def __mul__(self, other):
        if isinstance(other, DivisorClass):
            return other * self
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented


@dataclass(frozen=True)
class HContraction:
    """``(H^3 ch0, H^2 ch1, H ch2, ch3)``."""

    v0: Scalar
    v1: Scalar
    v2: Scalar
    v3: Scalar = Scalar(0)

    def __iter__(self):
        return iter((self.v0, self.v1, self.v2, self.v3))

    @classmethod
    def of(cls, *values) -> HContraction:
        return cls(*(as_scalar(v) for v in values))


@dataclass(frozen=True)
class ChernCharacter:
    ch0: Scalar
    ch1: DivisorClass
    ch2: CurveClass
    ch3: Scalar

    @property
    def model(self) -> ThreefoldModel:
        return self.ch1.model

    def __add__(self, other):
        if not isinstance(other, ChernCharacter):
            return NotImplemented
        return ChernCharacter(
            self.ch0 + other.ch0, self.ch1 + other.ch1, self.ch2 + other.ch2, self.ch3 + other.ch3
        )

    def __neg__(self):
        return ChernCharacter(-self.ch0, -self.ch1, -self.ch2, -self.ch3)

    def __sub__(self, other):
        if not isinstance(other, ChernCharacter):
            return NotImplemented
        return self + (-other)

    def scale(self, k) -> ChernCharacter:
        k = as_scalar(k)
        return ChernCharacter(k * self.ch0, self.ch1.scale(k), self.ch2.scale(k), k * self.ch3)

    def __rmul__(self, k):
        if isinstance(k, (Scalar, int, Fraction)):
            return self.scale(k)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, ChernCharacter):
            return graded_product(self, other)
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, ChernCharacter):
            return NotImplemented
        return (
            self.ch0 == other.ch0
            and self.ch1 == other.ch1
            and self.ch2 == other.ch2
            and self.ch3 == other.ch3
        )

    def __hash__(self):
        return hash((self.ch0, self.ch1, self.ch2, self.ch3))

    def to_dict(self) -> dict:
        return {
            "ch0": str(self.ch0),
            "ch1": [str(c) for c in self.ch1.coeffs],
            "ch2": [str(c) for c in self.ch2.coeffs],
            "ch3": str(self.ch3),
        }

    @classmethod
    def from_dict(cls, model: ThreefoldModel, data: dict) -> ChernCharacter:
        return cls(
            as_scalar(str(data.get("ch0", "0"))),
            model.divisor([str(x) for x in data.get("ch1", [0] * model.r)]),
            model.curve([str(x) for x in data.get("ch2", [0] * model.s)]),
            as_scalar(str(data.get("ch3", "0"))),
        )

    def __str__(self):
        return f"({self.ch0}, {self.ch1}, {self.ch2}, {self.ch3})"


# -- intersection numbers -------------------------------------------------


def triple(m: ThreefoldModel, d1: DivisorClass, d2: DivisorClass, d3: DivisorClass) -> Scalar:
    for d in (d1, d2, d3):
        if d.model is not m:
            raise ModelMismatchError("class does not belong to the model")
    return d3 * (d1 * d2)


def pair(m: ThreefoldModel, d: DivisorClass, c: CurveClass) -> Scalar:
    if d.model is not m or c.model is not m:
        raise ModelMismatchError("class does not belong to the model")
    return d * c


def div_square(m: ThreefoldModel, d: DivisorClass) -> CurveClass:
    if d.model is not m:
        raise ModelMismatchError("class does not belong to the model")
    return d * d


def _basis_triple(m: ThreefoldModel, i: int, j: int, k: int) -> Fraction:
    return sum((m.pairing[k][t] * x for t, x in enumerate(m.product[i][j])), Fraction(0))


def validate_model(m: ThreefoldModel) -> list[str]:
    """Return the list of failed consistency checks (empty when valid)."""
    out: list[str] = []
    r, s = m.r, m.s
    if len(m.pairing) != r or any(len(row) != s for row in m.pairing):
        out.append(f"pairing shape: expected {r}x{s}")
        return out
    if len(m.product) != r or any(len(row) != r for row in m.product):
        out.append(f"product shape: expected {r}x{r}")
        return out
    if any(len(v) != s for row in m.product for v in row):
        out.append(f"product entries must have {s} curve coefficients")
        return out
    for name, vec, n in (("c1_tangent", m.c1_tangent, r), ("ch2_tangent", m.ch2_tangent, s), ("H", m.H, r)):
        if len(vec) != n:
            out.append(f"{name} shape: expected {n} coefficients")
    if out:
        return out
    for i in range(r):
        for j in range(i + 1, r):
            if tuple(m.product[i][j]) != tuple(m.product[j][i]):
                out.append(f"product symmetry: ({m.divisor_basis[i]},{m.divisor_basis[j]})")
    for i in range(r):
        for j in range(r):
            for k in range(r):
                base = _basis_triple(m, i, j, k)
                for a, b, c in ((j, k, i), (k, i, j), (j, i, k)):
                    if _basis_triple(m, a, b, c) != base:
                        names = ",".join(m.divisor_basis[t] for t in (i, j, k))
                        out.append(f"triple symmetry: ({names})")
                        break
    seen = set()
    out = [x for x in out if not (x in seen or seen.add(x))]
    if m.H3.sign() <= 0:
        out.append(f"H^3 > 0: got {m.H3}")
    c1 = m.c1
    c2 = (c1 * c1 - m.ch2T.scale(2)).scale(Fraction(1, 2))
    td3 = (c1 * c2) / 24
    if td3 != 1:
        out.append(f"χ(O_X) = 1: c1·c2/24 = {td3}")
    if m.fano_index is not None:
        if m.c1 != m.h.scale(m.fano_index):
            out.append(f"c1 = i_X·H: c1 = {m.c1}, i_X·H = {m.h.scale(m.fano_index)}")
    return out


# -- Chern characters -----------------------------------------------------


def graded_product(a: ChernCharacter, b: ChernCharacter) -> ChernCharacter:
    """Product in the numerical Chow ring, truncated above degree 3."""
    return ChernCharacter(
        a.ch0 * b.ch0,
        b.ch1.scale(a.ch0) + a.ch1.scale(b.ch0),
        b.ch2.scale(a.ch0) + a.ch2.scale(b.ch0) + a.ch1 * b.ch1,
        a.ch0 * b.ch3 + b.ch0 * a.ch3 + a.ch1 * b.ch2 + b.ch1 * a.ch2,
    )


def ch_line_bundle(m: ThreefoldModel, d: DivisorClass) -> ChernCharacter:
    if d.model is not m:
        raise ModelMismatchError("class does not belong to the model")
    d2 = d * d
    return ChernCharacter(Scalar(1), d, d2.scale(Fraction(1, 2)), (d * d2) / 6)


def structure_sheaf(m: ThreefoldModel, d: DivisorClass) -> ChernCharacter:
    """Class of ``O_D = O_X - O_X(-D)``."""
    return ch_line_bundle(m, m.zero_divisor()) - ch_line_bundle(m, -d)


def tensor_line(ch: ChernCharacter, d: DivisorClass) -> ChernCharacter:
    return graded_product(ch, ch_line_bundle(d.model, d))


def twist(ch: ChernCharacter, beta) -> ChernCharacter:
    """``ch * exp(-beta H)``, written out degree by degree."""
    b = as_scalar(beta)
    m = ch.model
    H = m.h
    b2 = b * b / 2
    b3 = b * b * b / 6
    return ChernCharacter(
        ch.ch0,
        ch.ch1 - H.scale(b * ch.ch0),
        ch.ch2 - (H * ch.ch1).scale(b) + (H * H).scale(b2 * ch.ch0),
        ch.ch3 - b * (H * ch.ch2) + b2 * (H * (H * ch.ch1)) - b3 * m.H3 * ch.ch0,
    )


def dual_shift(ch: ChernCharacter) -> ChernCharacter:
    return ChernCharacter(-ch.ch0, ch.ch1, -ch.ch2, ch.ch3)


def h_contract(ch: ChernCharacter) -> HContraction:
    m = ch.model
    H = m.h
    return HContraction(m.H3 * ch.ch0, H * (H * ch.ch1), H * ch.ch2, ch.ch3)


def frobenius_scale(ch: ChernCharacter, k: int) -> ChernCharacter:
    if k < 1:
        raise ValueError("Frobenius degree must be positive")
    return ChernCharacter(ch.ch0, ch.ch1.scale(k), ch.ch2.scale(k * k), ch.ch3 * k**3)


# -- JSON -----------------------------------------------------------------


def _frac_list(values) -> tuple[Fraction, ...]:
    return tuple(Fraction(str(v)) for v in values)


def _product_key(key: str, names: Sequence[str]) -> tuple[int, int]:
    parts = [p.strip() for p in key.replace("*", ",").split(",")]
    if len(parts) != 2:
        raise ValueError(f"bad product key {key!r}")
    out = []
    for p in parts:
        out.append(names.index(p) if p in names else int(p))
    return out[0], out[1]


def model_from_dict(data: dict) -> ThreefoldModel:
    if "pairing" not in data and "toric" in data:
        from .toric import model_from_fan_data

        return model_from_fan_data(data)
    names = tuple(data["divisor_basis"])
    curves = tuple(data["curve_basis"])
    r, s = len(names), len(curves)
    product: list[list[tuple[Fraction, ...] | None]] = [[None] * r for _ in range(r)]
    raw = data["product"]
    items = raw.items() if isinstance(raw, dict) else (
        (f"{i},{j}", raw[i][j]) for i in range(r) for j in range(r)
    )
    for key, vec in items:
        i, j = _product_key(key, names)
        product[i][j] = _frac_list(vec)
    for i in range(r):
        for j in range(r):
            if product[i][j] is None:
                product[i][j] = product[j][i] if product[j][i] is not None else tuple(
                    Fraction(0) for _ in range(s)
                )
    return ThreefoldModel(
        name=data["name"],
        divisor_basis=names,
        curve_basis=curves,
        pairing=tuple(_frac_list(row) for row in data["pairing"]),
        product=tuple(tuple(row) for row in product),
        c1_tangent=_frac_list(data["c1_tangent"]),
        ch2_tangent=_frac_list(data["ch2_tangent"]),
        H=_frac_list(data["H"]),
        fano_index=data.get("fano_index"),
        toric=data.get("toric"),
    )


def model_to_dict(m: ThreefoldModel) -> dict:
    names = m.divisor_basis
    out = {
        "name": m.name,
        "divisor_basis": list(names),
        "curve_basis": list(m.curve_basis),
        "pairing": [[str(x) for x in row] for row in m.pairing],
        "product": {
            f"{names[i]},{names[j]}": [str(x) for x in m.product[i][j]]
            for i in range(m.r)
            for j in range(i, m.r)
        },
        "c1_tangent": [str(x) for x in m.c1_tangent],
        "ch2_tangent": [str(x) for x in m.ch2_tangent],
        "H": [str(x) for x in m.H],
    }
    if m.fano_index is not None:
        out["fano_index"] = m.fano_index
    if m.toric is not None:
        out["toric"] = m.toric
    return out


def load_model(path: str | Path) -> ThreefoldModel:
    with open(path, encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))


def save_model(m: ThreefoldModel, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(m), fh, indent=2)
        fh.write("\n")
