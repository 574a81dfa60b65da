"""A small expression language for classes on a model.

Examples::

    O            O(2h-e)        O_e          2O(h) - O(h-e)     O(h)[1]
    2h - e       h^2 + 2e^2     1/48(h^2+2e^2)   sqrt(2)/7 h
    {"ch0": "1", "ch1": ["1", "0"], "ch2": ["1/2", "0"], "ch3": "1/6"}

Every expression evaluates to a graded element ``(ch0, ch1, ch2, ch3)`` with
multiplication truncated above degree three, so divisors, curves and sheaf
classes share one grammar.  Juxtaposition means multiplication.
"""

from __future__ import annotations

import json
import re

from .chow import ChernCharacter, CurveClass, DivisorClass, ThreefoldModel, ch_line_bundle, graded_product, structure_sheaf
from .scalar import Scalar, sqrt_rational

__all__ = ["ParseError", "parse_element", "parse_class", "parse_divisor", "parse_curve", "parse_scalar"]


class ParseError(ValueError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\^|\[|\]|[-+*/()]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} in {text!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, model: ThreefoldModel, text: str):
        self.model = model
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or 'a token'} in {self.text!r}")
        self.i += 1
        return tok

    def scalar(self, x) -> ChernCharacter:
        return ChernCharacter(
            x if isinstance(x, Scalar) else Scalar(x),
            self.model.zero_divisor(),
            self.model.zero_curve(),
            Scalar(0),
        )

    def parse(self) -> ChernCharacter:
        if not self.toks:
            raise ParseError("empty expression")
        value = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return value

    def expr(self) -> ChernCharacter:
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _starts_factor(self) -> bool:
        kind, val = self.peek()
        return kind in ("num", "name") or val == "("

    def term(self) -> ChernCharacter:
        value = self.power()
        while True:
            _, val = self.peek()
            if val == "*":
                self.take()
                value = graded_product(value, self.power())
            elif val == "/":
                self.take()
                rhs = self.power()
                if not (rhs.ch1.is_zero() and rhs.ch2.is_zero() and rhs.ch3 == 0) or rhs.ch0 == 0:
                    raise ParseError("can only divide by a nonzero number")
                value = value.scale(1 / rhs.ch0)
            elif self._starts_factor():
                value = graded_product(value, self.power())
            else:
                return value

    def power(self) -> ChernCharacter:
        base = self.postfix()
        if self.peek()[1] == "^":
            self.take()
            kind, val = self.take()
            if kind != "num" or "/" in val:
                raise ParseError("exponents must be nonnegative integers")
            out = self.scalar(1)
            for _ in range(int(val)):
                out = graded_product(out, base)
            return out
        return base

    def postfix(self) -> ChernCharacter:
        value = self.atom()
        while self.peek()[1] == "[":
            self.take()
            kind, val = self.take()
            if kind != "num" or "/" in val:
                raise ParseError("shift must be an integer")
            self.take("]")
            if int(val) % 2:
                value = -value
        return value

    def atom(self) -> ChernCharacter:
        kind, val = self.take()
        m = self.model
        if kind == "num":
            return self.scalar(Scalar(val))
        if val == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "name":
            if val == "sqrt":
                self.take("(")
                k2, v2 = self.take()
                if k2 != "num":
                    raise ParseError("sqrt takes a rational literal")
                self.take(")")
                return self.scalar(sqrt_rational(v2))
            if val == "O":
                if self.peek()[1] == "(":
                    self.take("(")
                    d = self.expr()
                    self.take(")")
                    return ch_line_bundle(m, _as_divisor(d, self.text))
                return ch_line_bundle(m, m.zero_divisor())
            if val.startswith("O_"):
                name = val[2:]
                if name not in m.divisor_basis:
                    raise ParseError(f"unknown divisor {name!r}")
                return structure_sheaf(m, m.basis_divisor(name))
            if val in m.divisor_basis:
                d = m.basis_divisor(val)
                return ChernCharacter(Scalar(0), d, m.zero_curve(), Scalar(0))
            if val in m.curve_basis:
                c = m.basis_curve(val)
                return ChernCharacter(Scalar(0), m.zero_divisor(), c, Scalar(0))
            if val == "pt":
                return ChernCharacter(Scalar(0), m.zero_divisor(), m.zero_curve(), Scalar(1))
            raise ParseError(f"unknown name {val!r} for model {m.name!r}")
        raise ParseError(f"unexpected {val!r} in {self.text!r}")


def _as_divisor(x: ChernCharacter, text: str) -> DivisorClass:
    if x.ch0 != 0 or not x.ch2.is_zero() or x.ch3 != 0:
        raise ParseError(f"{text!r} is not a divisor expression")
    return x.ch1


def parse_element(model: ThreefoldModel, text: str) -> ChernCharacter:
    text = text.strip()
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON class: {exc}") from None
        try:
            return ChernCharacter.from_dict(model, data)
        except (ValueError, TypeError) as exc:
            raise ParseError(f"bad JSON class: {exc}") from None
    return _Parser(model, text).parse()


def parse_class(model: ThreefoldModel, text: str) -> ChernCharacter:
    return parse_element(model, text)


def parse_divisor(model: ThreefoldModel, text: str) -> DivisorClass:
    return _as_divisor(parse_element(model, text), text)


def parse_curve(model: ThreefoldModel, text: str) -> CurveClass:
    x = parse_element(model, text)
    if x.ch0 != 0 or not x.ch1.is_zero() or x.ch3 != 0:
        raise ParseError(f"{text!r} is not a curve expression")
    return x.ch2


def parse_scalar(text: str) -> Scalar:
    """Rational or quadratic-irrational literal such as ``1/2`` or ``1+2*sqrt(3)``."""
    try:
        return Scalar.parse(text)
    except ValueError:
        pass
    from .fano import get_model

    x = parse_element(get_model("p3"), text)
    if not (x.ch1.is_zero() and x.ch2.is_zero() and x.ch3 == 0):
        raise ParseError(f"{text!r} is not a number")
    return x.ch0
