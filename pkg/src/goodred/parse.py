"""Parser for map expressions in the variable x.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' integer)?
    atom   := integer | decimal | 'x' | '(' expr ')'

Values are kept as numerator/denominator pairs of polynomials with exact
rational coefficients. No cancellation is performed, so an input whose
numerator and denominator share a factor is rejected downstream, as for
any other common factor. The coefficient-list form
``num=[c_d, ..., c_0]; den=[...]`` (descending) is also accepted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .maps import RationalMap, map_from_charts


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


Poly = list  # ascending list of Fraction


def _trim(a: Poly) -> Poly:
    while a and a[-1] == 0:
        a.pop()
    return a


def _add(a: Poly, b: Poly, sign: int = 1) -> Poly:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + sign * (b[i] if i < len(b) else 0) for i in range(n)])


def _mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


@dataclass
class _Frac:
    num: Poly
    den: Poly

    def __add__(self, other):
        if self.den == other.den:
            return _Frac(_add(self.num, other.num), self.den)
        return _Frac(_add(_mul(self.num, other.den), _mul(other.num, self.den)), _mul(self.den, other.den))

    def __sub__(self, other):
        return self + _Frac([-c for c in other.num], other.den)

    def __mul__(self, other):
        return _Frac(_mul(self.num, other.num), _mul(self.den, other.den))


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|(x)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                off = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise ParseError(f"unexpected character {text[off]!r}", off)
            start = m.start(m.lastindex)
            kind = ("num", "var", "op")[m.lastindex - 1]
            value = m.group(m.lastindex)
            self.tokens.append((kind, "^" if value == "**" else value, start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, off = self.take()
        if v != value:
            raise ParseError(f"expected {value!r}", off)

    def parse(self) -> _Frac:
        if not self.tokens:
            raise ParseError("empty expression", 0)
        out = self.expr()
        kind, v, off = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {v!r}", off)
        return out

    def expr(self) -> _Frac:
        out = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> _Frac:
        out = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op, off = self.take()[1:]
            rhs = self.unary()
            if op == "*":
                out = out * rhs
            else:
                if not rhs.num:
                    raise ParseError("zero denominator", off)
                out = out * _Frac(rhs.den, rhs.num)
        return out

    def unary(self) -> _Frac:
        kind, v, off = self.peek()
        if kind == "op" and v in ("+", "-"):
            self.take()
            inner = self.unary()
            return inner if v == "+" else _Frac([-c for c in inner.num], inner.den)
        return self.power()

    def power(self) -> _Frac:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, v, off = self.take()
            if kind != "num" or "." in v:
                raise ParseError("exponent must be a non-negative integer", off)
            e = int(v)
            out = _Frac([Fraction(1)], [Fraction(1)])
            for _ in range(e):
                out = out * base
            return out
        return base

    def atom(self) -> _Frac:
        kind, v, off = self.take()
        if kind == "num":
            return _Frac([Fraction(v)] if Fraction(v) else [], [Fraction(1)])
        if kind == "var":
            return _Frac([Fraction(0), Fraction(1)], [Fraction(1)])
        if v == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {v or 'end of input'!r}", off)


_LIST_FORM = re.compile(r"^\s*num\s*=\s*\[(?P<num>[^\]]*)\]\s*;\s*den\s*=\s*\[(?P<den>[^\]]*)\]\s*$")


def _parse_list(body: str, offset: int) -> Poly:
    items = [s for s in body.split(",")]
    out = []
    pos = offset
    for item in items:
        try:
            out.append(Fraction(item.strip()))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad coefficient {item.strip()!r}", pos) from None
        pos += len(item) + 1
    return _trim(out[::-1])


def parse_rational_function(text: str) -> tuple[Poly, Poly]:
    """Numerator and denominator as ascending Fraction lists (no cancellation)."""
    m = _LIST_FORM.match(text)
    if m:
        return _parse_list(m.group("num"), m.start("num")), _parse_list(m.group("den"), m.start("den"))
    frac = _Parser(text).parse()
    return frac.num, frac.den


def parse_map(text: str) -> RationalMap:
    num, den = parse_rational_function(text)
    if not den:
        raise ParseError("zero denominator", 0)
    return map_from_charts(num, den)
