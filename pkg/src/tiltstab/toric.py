"""Smooth complete toric threefolds.

Fans are validated combinatorially, intersection numbers of torus-invariant
divisors are computed directly from the fan, and these are used to
cross-check (or build) :class:`~tiltstab.chow.ThreefoldModel` data.  The
Frobenius pushforward of a line bundle splits into line bundles whose classes
and multiplicities are computed here, together with helpers for multiplicity
growth, copositivity of ``D -> H.D^2`` on the effective cone, and continued
fraction approximation of quadratic irrationals.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import _linalg as la
from .chow import (
    ChernCharacter,
    CurveClass,
    DivisorClass,
    ThreefoldModel,
    ch_line_bundle,
    frobenius_scale,
)
from .rr import euler_char, euler_pair
from .scalar import Scalar, as_scalar

__all__ = [
    "ToricFan",
    "ToricThreefold",
    "FrobeniusDecomposition",
    "Admissibility",
    "validate_fan",
    "fan_triple",
    "toric_threefold",
    "validate_toric",
    "tangent_chern",
    "model_from_fan",
    "model_from_fan_data",
    "frobenius_decompose",
    "multiplicity",
    "growth_exponent",
    "admissible_polarization",
    "dirichlet_approx",
    "pushforward_chi_check",
]

IntVec = tuple[int, ...]


@dataclass(frozen=True)
class ToricFan:
    rays: tuple[IntVec, ...]
    cones: tuple[tuple[int, int, int], ...]

    @classmethod
    def from_lists(cls, rays, cones) -> ToricFan:
        return cls(tuple(tuple(int(x) for x in r) for r in rays), tuple(tuple(sorted(c)) for c in cones))

    def cone_set(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(c) for c in self.cones)

    def two_faces(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(p) for c in self.cones for p in itertools.combinations(c, 2))


def validate_fan(fan: ToricFan) -> list[str]:
    out = []
    n = len(fan.rays)
    for i, r in enumerate(fan.rays):
        if len(r) != 3:
            out.append(f"ray {i} is not a 3-vector")
        elif math.gcd(*r) != 1:
            out.append(f"ray {i} is not primitive")
    if out:
        return out
    for c in fan.cones:
        if len(set(c)) != 3 or any(not 0 <= i < n for i in c):
            out.append(f"cone {list(c)} is not a triple of ray indices")
            continue
        d = la.det3([fan.rays[i] for i in c])
        if abs(d) != 1:
            out.append(f"cone {list(c)} is not smooth (det = {d})")
    if out:
        return out
    facets = Counter(frozenset(p) for c in fan.cones for p in itertools.combinations(c, 2))
    for f, k in sorted(facets.items(), key=lambda t: sorted(t[0])):
        if k != 2:
            out.append(f"facet {sorted(f)} not shared by two cones (found {k})")
    used = {i for c in fan.cones for i in c}
    for i in range(n):
        if i not in used:
            out.append(f"ray {i} lies in no cone")
    if not out:
        # a complete fan without overlaps: adjacent cones lie on opposite sides of their facet
        for c1, c2 in itertools.combinations(fan.cones, 2):
            common = set(c1) & set(c2)
            if len(common) != 2:
                continue
            a, b = sorted(common)
            x = (set(c1) - common).pop()
            y = (set(c2) - common).pop()
            s1 = la.det3([fan.rays[a], fan.rays[b], fan.rays[x]])
            s2 = la.det3([fan.rays[a], fan.rays[b], fan.rays[y]])
            if s1 * s2 >= 0:
                out.append(f"cones {list(c1)} and {list(c2)} overlap")
    return out


def _dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def fan_triple(fan: ToricFan, i: int, j: int, k: int) -> Fraction:
    """``D_i . D_j . D_k`` for torus-invariant divisors of a smooth complete fan."""
    return _fan_triple_cached(fan, *sorted((i, j, k)))


@lru_cache(maxsize=None)
def _fan_triple_cached(fan: ToricFan, i: int, j: int, k: int) -> Fraction:
    idx = (i, j, k)
    distinct = set(idx)
    cones = fan.cone_set()
    faces = fan.two_faces()
    if len(distinct) == 3:
        return Fraction(int(frozenset(idx) in cones))
    for a, b in itertools.combinations(distinct, 2):
        if frozenset((a, b)) not in faces:
            return Fraction(0)
    counts = Counter(idx)
    a = max(counts, key=lambda t: (counts[t], -t))
    rest = list(idx)
    rest.remove(a)
    others = set(rest) - {a}
    # pick a cone through a (and the other index), then a dual vector m with <m, v_a> = 1
    cone = next(c for c in fan.cones if a in c and others <= set(c))
    basis = [fan.rays[t] for t in cone]
    inv = la.inverse(basis)  # rows of basis times inv = identity
    col = cone.index(a)
    m = [inv[r][col] for r in range(3)]
    total = Fraction(0)
    for rho, v in enumerate(fan.rays):
        if rho in cone:
            continue
        coeff = _dot(m, v)
        if coeff:
            total -= coeff * fan_triple(fan, rho, rest[0], rest[1])
    return total


@dataclass(eq=False)
class ToricThreefold:
    fan: ToricFan
    model: ThreefoldModel
    ray_classes: tuple[IntVec, ...]

    def ray_divisor(self, rho: int) -> DivisorClass:
        return self.model.divisor(self.ray_classes[rho])


def _fan_from_data(data: dict) -> tuple[ToricFan, tuple[IntVec, ...]]:
    fan = ToricFan.from_lists(data["rays"], data["cones"])
    rc = data["ray_classes"]
    classes = tuple(tuple(int(x) for x in rc[str(i)]) for i in range(len(fan.rays)))
    return fan, classes


def toric_threefold(model: ThreefoldModel) -> ToricThreefold:
    if not model.toric:
        raise ValueError(f"model {model.name!r} carries no toric data")
    fan, classes = _fan_from_data(model.toric)
    return ToricThreefold(fan, model, classes)


def validate_toric(tv: ToricThreefold) -> list[str]:
    out = validate_fan(tv.fan)
    if out:
        return out
    m = tv.model
    r = m.r
    for k in range(3):
        s = [sum(v[k] * c[t] for v, c in zip(tv.fan.rays, tv.ray_classes)) for t in range(r)]
        if any(s):
            out.append(f"linear equivalence fails for coordinate {k}: {s}")
    total = [sum(c[t] for c in tv.ray_classes) for t in range(r)]
    if m.divisor(total) != m.c1:
        out.append(f"sum of ray classes {total} differs from c1")
    n = len(tv.fan.rays)
    for i, j, k in itertools.combinations_with_replacement(range(n), 3):
        a = fan_triple(tv.fan, i, j, k)
        b = tv.ray_divisor(k) * (tv.ray_divisor(i) * tv.ray_divisor(j))
        if b != a:
            out.append(f"triple intersection D{i}.D{j}.D{k}: fan gives {a}, model gives {b}")
    return out


def tangent_chern(tv: ToricThreefold, check: bool = True) -> tuple[DivisorClass, CurveClass]:
    """``(c1, ch2)`` of the tangent bundle from ``prod (1 + D_rho)``."""
    m = tv.model
    divs = [tv.ray_divisor(i) for i in range(len(tv.fan.rays))]
    c1 = m.zero_divisor()
    for d in divs:
        c1 = c1 + d
    c2 = m.zero_curve()
    for a, b in itertools.combinations(divs, 2):
        c2 = c2 + a * b
    ch2 = ((c1 * c1) - c2.scale(2)).scale(Fraction(1, 2))
    if check:
        if c1 != m.c1:
            raise ValueError(f"toric c1 = {c1} but the model stores {m.c1}")
        if ch2 != m.ch2T:
            raise ValueError(f"toric ch2 = {ch2} but the model stores {m.ch2T}")
    return c1, ch2


def model_from_fan(
    name: str,
    fan: ToricFan,
    ray_classes: Sequence[Sequence[int]],
    divisor_basis: Sequence[str],
    H: Sequence,
    fano_index: int | None = None,
    curve_basis: Sequence[str] | None = None,
) -> ThreefoldModel:
    """Intersection data on the divisor basis from fan combinatorics.

    The curve basis is taken dual to the divisor basis, so the pairing is the
    identity and ``product[i][j][k] = g_i.g_j.g_k``.
    """
    problems = validate_fan(fan)
    if problems:
        raise ValueError("; ".join(problems))
    r = len(divisor_basis)
    n = len(fan.rays)
    cols = [[Fraction(ray_classes[rho][t]) for rho in range(n)] for t in range(r)]
    reps = []
    for i in range(r):
        y = la.solve(cols, [int(t == i) for t in range(r)])
        if y is None:
            raise ValueError("ray classes do not span the divisor basis")
        reps.append(y)

    def tri(i, j, k):
        total = Fraction(0)
        for a, ya in enumerate(reps[i]):
            if not ya:
                continue
            for b, yb in enumerate(reps[j]):
                if not yb:
                    continue
                for c, yc in enumerate(reps[k]):
                    if yc:
                        total += ya * yb * yc * fan_triple(fan, a, b, c)
        return total

    product = tuple(tuple(tuple(tri(i, j, k) for k in range(r)) for j in range(r)) for i in range(r))
    pairing = tuple(tuple(Fraction(int(i == j)) for j in range(r)) for i in range(r))
    c1 = tuple(Fraction(sum(c[t] for c in ray_classes)) for t in range(r))
    curves = tuple(curve_basis or (f"c_{x}" for x in divisor_basis))
    model = ThreefoldModel(
        name=name,
        divisor_basis=tuple(divisor_basis),
        curve_basis=curves,
        pairing=pairing,
        product=product,
        c1_tangent=c1,
        ch2_tangent=tuple(Fraction(0) for _ in range(r)),
        H=tuple(Fraction(str(x)) for x in H),
        fano_index=fano_index,
        toric={
            "rays": [list(v) for v in fan.rays],
            "cones": [list(c) for c in fan.cones],
            "ray_classes": {str(i): list(c) for i, c in enumerate(ray_classes)},
        },
    )
    tv = ToricThreefold(fan, model, tuple(tuple(c) for c in ray_classes))
    _, ch2 = tangent_chern(tv, check=False)
    model.ch2_tangent = tuple(c.rational() for c in ch2.coeffs)
    return model


def model_from_fan_data(data: dict) -> ThreefoldModel:
    fan, classes = _fan_from_data(data["toric"])
    return model_from_fan(
        data["name"],
        fan,
        classes,
        data["divisor_basis"],
        data["H"],
        data.get("fano_index"),
        data.get("curve_basis"),
    )


# -- Frobenius pushforward ------------------------------------------------


@dataclass(frozen=True)
class FrobeniusDecomposition:
    m: int
    D: IntVec
    summands: tuple[tuple[IntVec, int], ...]

    @property
    def total(self) -> int:
        return sum(k for _, k in self.summands)

    def as_dict(self) -> dict[IntVec, int]:
        return dict(self.summands)

    def multiplicity(self, cls: Sequence[int]) -> int:
        return self.as_dict().get(tuple(cls), 0)


def _int_class(model: ThreefoldModel, D) -> IntVec:
    if isinstance(D, DivisorClass):
        out = []
        for c in D.coeffs:
            q = c.rational()
            if q.denominator != 1:
                raise ValueError(f"divisor {D} is not integral")
            out.append(int(q))
        return tuple(out)
    return tuple(int(x) for x in D)


def frobenius_decompose(tv: ToricThreefold, D, m: int, method: str = "convolve") -> FrobeniusDecomposition:
    """Classes ``L = (-D + sum a_rho D_rho)/m`` with multiplicities, over ``a in [0, m)^n``."""
    if m < 1:
        raise ValueError("m must be positive")
    d = _int_class(tv.model, D)
    r = len(d)
    classes = tv.ray_classes
    counts: Counter
    if method == "enumerate":
        counts = Counter()
        for a in itertools.product(range(m), repeat=len(classes)):
            vec = [-d[t] + sum(ai * c[t] for ai, c in zip(a, classes)) for t in range(r)]
            if all(x % m == 0 for x in vec):
                counts[tuple(x // m for x in vec)] += 1
    elif method == "convolve":
        acc: Counter = Counter({tuple(-x for x in d): 1})
        for c in classes:
            nxt: Counter = Counter()
            for vec, k in acc.items():
                for a in range(m):
                    nxt[tuple(v + a * ct for v, ct in zip(vec, c))] += k
            acc = nxt
        counts = Counter()
        for vec, k in acc.items():
            if all(x % m == 0 for x in vec):
                counts[tuple(x // m for x in vec)] += k
    else:
        raise ValueError(f"unknown method {method!r}")
    summands = tuple(sorted(counts.items()))
    return FrobeniusDecomposition(m, d, summands)


def multiplicity(tv: ToricThreefold, D, L, m: int) -> int:
    return frobenius_decompose(tv, D, m).multiplicity(L)


def growth_exponent(tv: ToricThreefold, D, L, m_range: Sequence[int]) -> int:
    """Degree of polynomial growth of ``m -> eta_L(m)`` over ``m_range``."""
    ms = sorted(m_range)
    if len(ms) < 5:
        raise ValueError("need at least five values of m")
    etas = [multiplicity(tv, D, L, m) for m in ms]
    if not any(etas):
        raise ValueError(f"class {tuple(L)} never appears for m in {ms[0]}..{ms[-1]}")
    consecutive = all(b - a == 1 for a, b in zip(ms, ms[1:]))
    if consecutive:
        diffs = list(etas)
        for k in range(len(ms) - 1):
            nxt = [b - a for a, b in zip(diffs, diffs[1:])]
            if len(nxt) >= 2 and all(x == 0 for x in nxt):
                return k
            diffs = nxt
    pos = [(m, e) for m, e in zip(ms, etas) if e > 0]
    (m0, e0), (m1, e1) = pos[0], pos[-1]
    if m0 == m1:
        return 0
    return round(math.log(e1 / e0) / math.log(m1 / m0))


# -- polarization admissibility -------------------------------------------


@dataclass(frozen=True)
class Admissibility:
    admissible: bool
    reason: str = ""
    witness: IntVec | None = None
    min_value: Fraction | None = None

    def __bool__(self):
        return self.admissible


def _primitive(vec: Sequence[Fraction]) -> IntVec:
    den = math.lcm(*(Fraction(x).denominator for x in vec))
    ints = [int(Fraction(x) * den) for x in vec]
    g = math.gcd(*ints) or 1
    return tuple(x // g for x in ints)


def _cone_generators(tv: ToricThreefold) -> list[IntVec]:
    gens: list[IntVec] = []
    for c in tv.ray_classes:
        p = _primitive(c)
        if p not in gens:
            gens.append(p)
    return sorted(gens)


def admissible_polarization(tv: ToricThreefold, H) -> Admissibility:
    """Is ``H.D^2 >= 0`` on the effective cone, with zeros only on extremal rays?"""
    model = tv.model
    Hd = H if isinstance(H, DivisorClass) else model.divisor(H)
    gens = _cone_generators(tv)
    n = len(gens)
    gdiv = [model.divisor(g) for g in gens]
    A = [[(Hd * (gdiv[i] * gdiv[j])).rational() for j in range(n)] for i in range(n)]

    # minimum of x^T A x on the simplex via KKT points of every face
    best = None
    for size in range(1, n + 1):
        for S in itertools.combinations(range(n), size):
            k = len(S)
            rows = [[A[i][j] for j in S] + [Fraction(-1)] for i in S]
            rows.append([Fraction(1)] * k + [Fraction(0)])
            sol = la.solve_unique(rows, [0] * k + [1])
            if sol is None or any(x <= 0 for x in sol[:k]):
                continue
            lam = sol[k]
            if best is None or lam < best[0]:
                x = [Fraction(0)] * n
                for t, i in enumerate(S):
                    x[i] = sol[t]
                best = (lam, x)
    lam, x = best
    if lam < 0:
        cls = [sum(x[i] * gens[i][t] for i in range(n)) for t in range(model.r)]
        return Admissibility(False, "H.D^2 < 0 for an effective class", _primitive(cls), lam)

    # zero directions must be extremal rays
    for size in range(2, n + 1):
        for S in itertools.combinations(range(n), size):
            sub = [[A[i][j] for j in S] for i in S]
            x = la.feasible_point(sub, [0] * size, [1] * size)
            if x is not None:
                cls = [sum(x[a] * gens[i][t] for a, i in enumerate(S)) for t in range(model.r)]
                return Admissibility(False, "H.D^2 = 0 on a non-extremal class", _primitive(cls), Fraction(0))
    for i in range(n):
        if A[i][i] != 0:
            continue
        others = [gens[j] for j in range(n) if j != i]
        eq = [[o[t] for o in others] for t in range(model.r)]
        if others and la.feasible(eq, list(gens[i]), [0] * len(others)):
            return Admissibility(False, "H.D^2 = 0 on a non-extremal generator", gens[i], Fraction(0))
    return Admissibility(True, "", None, lam)


# -- Dirichlet approximation ----------------------------------------------


def dirichlet_approx(x, count: int) -> list[tuple[int, int]]:
    """First ``count`` continued-fraction convergents ``p/q`` with ``|x - p/q| < 1/q^2``."""
    x = as_scalar(x)
    if x.is_rational:
        raise ValueError(f"{x} is rational")
    out: list[tuple[int, int]] = []
    p_prev, q_prev, p, q = 0, 1, 1, 0
    t = x
    last_err = None
    while len(out) < count:
        a = math.floor(t)
        p_prev, q_prev, p, q = p, q, a * p + p_prev, a * q + q_prev
        err = abs(x - Fraction(p, q))
        if not err < Fraction(1, q * q):
            raise ArithmeticError(f"convergent {p}/{q} violates the Dirichlet bound")
        if out and out[-1][1] == q:
            # a duplicate denominator 1 at the start; keep the better one
            out[-1] = (p, q)
        else:
            if last_err is not None and not err < last_err:
                raise ArithmeticError(f"convergent {p}/{q} does not improve the error")
            out.append((p, q))
        last_err = err
        t = 1 / (t - a)
    return out


# -- Euler characteristic bookkeeping -------------------------------------


def pushforward_chi_check(tv: ToricThreefold, D, m: int) -> tuple[Scalar, Scalar]:
    """``chi(O(mD))`` computed directly and through the pushforward of ``O_X``."""
    model = tv.model
    d = _int_class(model, D)
    E = ch_line_bundle(model, model.divisor(d))
    lhs = euler_char(model, frobenius_scale(E, m))
    dec = frobenius_decompose(tv, [0] * model.r, m)
    rhs = Scalar(0)
    for L, eta in dec.summands:
        rhs = rhs + eta * euler_pair(model, ch_line_bundle(model, model.divisor(L)), E)
    return lhs, rhs
