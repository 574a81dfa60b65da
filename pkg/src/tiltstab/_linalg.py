"""Small exact linear algebra over Fractions: rref, solve, nullspace, FM feasibility."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fractions(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = to_fractions(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One solution of ``a x = b`` (free variables set to 0), or None."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv):
        x[c] = red[i][n]
    return x


def solve_unique(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """The solution of ``a x = b`` if it exists and is unique."""
    n = len(a[0]) if a else 0
    if rank(a) < n:
        return None
    return solve(a, b)


def nullspace(a: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    if not a:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    n = len(a[0])
    red, piv = rref(a)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -red[i][f]
        basis.append(v)
    return basis


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def det3(a: Sequence[Sequence]) -> Fraction:
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def _fm_solve(ineqs: list[tuple[list[Fraction], Fraction]], nvars: int) -> list[Fraction] | None:
    """Fourier-Motzkin: a point z with ``c . z + k >= 0`` for every (c, k), or None."""
    rows = [(list(c), Fraction(k)) for c, k in ineqs]
    stages = []
    for j in range(nvars):
        stages.append(rows)
        pos = [r for r in rows if r[0][j] > 0]
        neg = [r for r in rows if r[0][j] < 0]
        rest = [r for r in rows if r[0][j] == 0]
        for cp, kp in pos:
            for cn, kn in neg:
                a, b = cp[j], -cn[j]
                c = [b * x + a * y for x, y in zip(cp, cn)]
                rest.append((c, b * kp + a * kn))
        # drop duplicates to keep the blow-up in check
        seen = {}
        for c, k in rest:
            seen.setdefault(tuple(c) + (k,), (c, k))
        rows = list(seen.values())
    if any(k < 0 for _, k in rows):
        return None
    z = [Fraction(0)] * nvars
    for j in reversed(range(nvars)):
        lo = hi = None
        for c, k in stages[j]:
            if c[j] == 0:
                continue
            rest = k + sum(c[t] * z[t] for t in range(j + 1, nvars))
            bound = -rest / c[j]
            if c[j] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        z[j] = lo if lo is not None else (hi if hi is not None else Fraction(0))
    return z


def feasible_point(
    eq_a: Sequence[Sequence],
    eq_b: Sequence,
    lower: Sequence,
) -> list[Fraction] | None:
    """A solution of ``eq_a x = eq_b`` with ``x_i >= lower_i``, or None.

    The equalities are eliminated by parametrizing their solution space, the
    bounds are then handled with Fourier-Motzkin elimination.
    """
    n = len(lower)
    if eq_a:
        x0 = solve(eq_a, eq_b)
        if x0 is None:
            return None
        kernel = nullspace(eq_a)
    else:
        x0 = [Fraction(0)] * n
        kernel = nullspace([], n)
    k = len(kernel)
    ineqs = []
    for i in range(n):
        coeffs = [kernel[t][i] for t in range(k)]
        ineqs.append((coeffs, x0[i] - Fraction(lower[i])))
    z = _fm_solve(ineqs, k)
    if z is None:
        return None
    return [x0[i] + sum(z[t] * kernel[t][i] for t in range(k)) for i in range(n)]


def feasible(eq_a: Sequence[Sequence], eq_b: Sequence, lower: Sequence) -> bool:
    return feasible_point(eq_a, eq_b, lower) is not None
