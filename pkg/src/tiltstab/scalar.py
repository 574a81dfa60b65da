"""Exact real numbers of the form ``a + b*sqrt(d)`` with rational ``a, b, d``.

Rationals are the ``d = 0`` case.  The radicand is always stored as a
squarefree positive integer (or 0), so two :class:`Scalar` values are equal
exactly when their canonical triples are equal.

Arithmetic stays inside a single quadratic field: combining two irrational
values with different radicands raises :class:`IncompatibleRadicandError`.
Order comparisons are exact for *any* pair of scalars, including ones from
different fields, by repeated squaring.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

__all__ = [
    "Scalar",
    "IncompatibleRadicandError",
    "sqrt_rational",
    "as_scalar",
    "squarefree_decomposition",
]


class IncompatibleRadicandError(ValueError):
    """Raised when an operation would leave the current quadratic field."""


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(s, t)`` with ``n == s*s*t`` and ``t`` squarefree, for ``n >= 1``."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    s, t = 1, 1
    p = 2
    # strip primes up to the cube root; what remains has at most two prime factors
    while p * p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                t *= p
        p += 1 if p == 2 else 2
    r = math.isqrt(n)
    if r * r == n:
        s *= r
    else:
        t *= n
    return s, t


def _fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational number")


class Scalar:
    """The exact real number ``a + b*sqrt(d)``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d=0):
        a, b, d = _fraction(a), _fraction(b), _fraction(d)
        if d < 0:
            raise ValueError(f"negative radicand {d}")
        if b == 0 or d == 0:
            b, d = Fraction(0), Fraction(0)
        else:
            # sqrt(p/q) = sqrt(p*q)/q, then pull squares out of p*q
            s, t = squarefree_decomposition(d.numerator * d.denominator)
            b = b * s / d.denominator
            if t == 1:
                a, b, d = a + b, Fraction(0), Fraction(0)
            else:
                d = Fraction(t)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- construction helpers -------------------------------------------

    @classmethod
    def parse(cls, text: str) -> Scalar:
        """Parse ``"p/q"``, ``"a + b*sqrt(d)"``, ``"a - sqrt(d)"``, ``"b*sqrt(d)"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty scalar literal")
        m = _SCALAR_RE.fullmatch(s)
        if m is None:
            raise ValueError(f"cannot parse scalar {text!r}")
        a_txt, sign, b_txt, d_txt = m.group("a"), m.group("sign"), m.group("b"), m.group("d")
        if d_txt is None:
            return cls(Fraction(a_txt))
        a = Fraction(a_txt) if a_txt not in (None, "") else Fraction(0)
        if b_txt in (None, ""):
            b = Fraction(1)
        else:
            b = Fraction(b_txt)
        if sign == "-":
            b = -b
        return cls(a, b, Fraction(d_txt))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> Scalar:
        return Scalar(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm ``a**2 - b**2*d``."""
        return self.a * self.a - self.b * self.b * self.d

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _radicand(x: Scalar, y: Scalar) -> Fraction:
        if x.b == 0:
            return y.d
        if y.b == 0 or x.d == y.d:
            return x.d
        raise IncompatibleRadicandError(
            f"cannot combine sqrt({x.d}) and sqrt({y.d}) in one quadratic field"
        )

    def __add__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return other
        d = Scalar._radicand(self, other)
        return Scalar(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return other
        d = Scalar._radicand(self, other)
        return Scalar(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero scalar")
        return Scalar(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Scalar(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- sign and order --------------------------------------------------

    def sign(self) -> int:
        """Exact sign of ``a + b*sqrt(d)`` as -1, 0 or 1."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger square wins
        lhs, rhs = self.a * self.a, self.b * self.b * self.d
        return sa if lhs > rhs else sb

    def _cmp(self, other) -> int:
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        if self.b == 0 or other.b == 0 or self.d == other.d:
            return (self - other).sign()
        # u - w with u in Q(sqrt d) and w = other.b*sqrt(other.d)
        u = Scalar(self.a - other.a, self.b, self.d)
        w = Scalar(0, other.b, other.d)
        su, sw = u.sign(), w.sign()
        if su != sw:
            return (su > sw) - (su < sw)
        by_square = (u * u - w.b * w.b * w.d).sign()
        return by_square if su > 0 else -by_square

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, (int, Rational)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __bool__(self):
        return self.b != 0 or self.a != 0

    # -- conversions -----------------------------------------------------

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(float(self.d))

    def __floor__(self):
        f = math.floor(float(self))
        while self < f:
            f -= 1
        while self >= f + 1:
            f += 1
        return f

    def __ceil__(self):
        return -math.floor(-self)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        coeff = abs(self.b)
        root = f"sqrt({self.d})" if coeff == 1 else f"{coeff}*sqrt({self.d})"
        op = "+" if self.b > 0 else "-"
        return f"{self.a} {op} {root}"

    def __repr__(self):
        return f"Scalar({str(self)!r})"


_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"(?P<a>{_RAT})?"
    rf"(?:(?P<sign>[+-])?(?:(?P<b>\d+(?:/\d+)?)\*)?sqrt\((?P<d>\d+(?:/\d+)?)\))?"
)


def as_scalar(x, strict: bool = True):
    """Coerce ints, Fractions and numeric strings to :class:`Scalar`."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Scalar(Fraction(x))
    if isinstance(x, str):
        return Scalar.parse(x)
    if strict:
        raise TypeError(f"cannot convert {x!r} to Scalar")
    return NotImplemented


def sqrt_rational(q) -> Scalar:
    """Exact square root of a nonnegative rational, reduced to canonical form."""
    if isinstance(q, Scalar):
        q = q.rational()
    q = _fraction(q)
    if q < 0:
        raise ValueError(f"square root of negative rational {q}")
    return Scalar(0, 1, q)
