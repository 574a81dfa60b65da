"""Batch reproduction of the explicit computations on the built-in models.

Each check returns a :class:`Check` with the exact values involved, so a
failing row shows what was computed and what was expected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .chow import ch_line_bundle, structure_sheaf
from .fano import c0_blowup, get_model, index1_constants
from .rr import todd
from .scalar import Scalar, sqrt_rational
from .tilt import GammaClass, beta_bar, gamma_inequality, wall_between
from .toric import tangent_chern, toric_threefold

__all__ = ["Check", "blowup_checks", "index2_checks", "index1_checks", "tangent_checks", "run_all"]

SQRT2 = sqrt_rational(2)
K_LOW = Scalar(Fraction(1, 48))
K_HIGH = Scalar(Fraction(3, 98)) + SQRT2 * Fraction(2, 147)


@dataclass(frozen=True)
class Check:
    group: str
    label: str
    passed: bool
    detail: str

    def row(self) -> str:
        return f"{self.group:<10} {self.label:<44} {self.detail} {'PASS' if self.passed else 'FAIL'}"


def _eq(group: str, label: str, got, want) -> Check:
    ok = got == want
    detail = f"value {got}" if ok else f"value {got} expected {want}"
    return Check(group, label, ok, detail)


def blowup_checks() -> list[Check]:
    m = get_model("blowup-p3-point")
    h, e = m.basis_divisor("h"), m.basis_divisor("e")
    out: list[Check] = []
    for k in range(-3, 1):
        ch = ch_line_bundle(m, h.scale(k))
        out.append(_eq("beta-bar", f"O(mh), m={k}", beta_bar(ch), (4 + SQRT2) * k / 7))
    ch1 = ch_line_bundle(m, h)
    out.append(_eq("beta-bar", "O(h)", beta_bar(ch1), (4 - SQRT2) / 7))
    out.append(_eq("beta-bar", "O_e", beta_bar(structure_sheaf(m, e)), Scalar(Fraction(1, 2))))

    for k in range(2, 7):
        w = wall_between(ch_line_bundle(m, h.scale(k)), ch_line_bundle(m, h.scale(k) - e))
        top = Scalar(Fraction(2 * k * k - 4 * k, 7) + Fraction(1, 4))
        ok = w.kind == "semicircle" and w.center == Fraction(1, 2) and w.radius_sq == top
        out.append(Check("wall", f"O(mh) vs O(mh-e), m={k}", ok, f"center {w.center}, radius^2 {w.radius_sq}"))

    curve = h * h + (e * e).scale(2)
    for kval, kname in ((K_LOW, "1/48"), (K_HIGH, "3/98+2sqrt(2)/147")):
        gamma = GammaClass(curve.scale(kval))
        for k in range(-3, 1):
            ch = ch_line_bundle(m, h.scale(k))
            v = gamma_inequality(ch, 0, beta_bar(ch), gamma)
            want = (Scalar(Fraction(3, 98)) + SQRT2 * Fraction(2, 147)) * k**3 - kval * k
            ok = v == want and v.sign() <= 0
            out.append(Check("gamma", f"O(mh), m={k}, k={kname}", ok, f"value {v} <= 0"))
        for k in range(2, 7):
            ch = ch_line_bundle(m, h.scale(k))
            alpha = sqrt_rational(Fraction(2 * k * k - 4 * k, 7) + Fraction(1, 4))
            v = gamma_inequality(ch, alpha, Fraction(1, 2), gamma)
            want = Scalar(Fraction(-(k**3), 42) + Fraction(k * k, 21)) - kval * k
            ok = v == want and v.sign() <= 0
            out.append(Check("gamma", f"O(mh) at wall top, m={k}, k={kname}", ok, f"value {v} <= 0"))
        v = gamma_inequality(structure_sheaf(m, e), 0, Fraction(1, 2), gamma)
        want = Fraction(1, 24) - 2 * kval
        ok = v == want and v.sign() <= 0
        out.append(Check("gamma", f"O_e, k={kname}", ok, f"value {v} <= 0"))
    return out


def index2_checks() -> list[Check]:
    out = [_eq("C0", "index two blow-up", c0_blowup(), Scalar(Fraction(-3, 98), Fraction(10, 1323), 30))]
    for name in ("p1xp1xp1", "p-tp2"):
        m = get_model(name)
        out.append(_eq("index-2", f"{name} H^3", m.H3, 6))
        out.append(_eq("index-2", f"{name} ch2(T_X) = 0", m.ch2T.is_zero(), True))
        out.append(_eq("index-2", f"{name} td3", todd(m).td3, 1))
    return out


def index1_checks(degrees: Iterable[int] = (4, 6, 10, 22, 30, 40, 48, 52, 54, 62)) -> list[Check]:
    out = []
    for d in degrees:
        c = index1_constants(d)
        out.append(_eq("index-1", f"g_X(0), H^3={d}", c.g(0), Scalar(Fraction(-1, d))))
        out.append(_eq("index-1", f"g_X(1), H^3={d}", c.g(1), Scalar(Fraction(1, d))))
        out.append(_eq("index-1", f"g_X(beta0) = 0, H^3={d}", c.g(c.beta0), 0))
        if d <= 48:
            out.append(_eq("index-1", f"beta0, H^3={d}", c.beta0, Scalar(Fraction(1, 2))))
    out.append(_eq("index-1", "beta0, H^3=54", index1_constants(54).beta0, Scalar(Fraction(2, 3))))
    return out


def tangent_checks() -> list[Check]:
    out = []
    for name in ("blowup-p3-point", "p1xp1xp1", "p3", "p1xp2", "blowup-p3-line"):
        m = get_model(name)
        _, ch2 = tangent_chern(toric_threefold(m), check=False)
        out.append(_eq("tangent", f"{name} ch2(T_X) = {m.ch2T}", ch2, m.ch2T))
    return out


SUITES: dict[str, Callable[[], list[Check]]] = {
    "blowup": blowup_checks,
    "index2": index2_checks,
    "index1": index1_checks,
    "tangent": tangent_checks,
}


def run_all(model: str | None = None) -> list[Check]:
    """All suites, or only the blow-up ones when ``model`` names that model."""
    names = ["blowup", "index2"] if model == "blowup-p3-point" else list(SUITES)
    out: list[Check] = []
    for n in names:
        out.extend(SUITES[n]())
    return out
