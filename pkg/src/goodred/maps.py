"""Rational self-maps of P^1 over Q given by coprime integer binary forms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Sequence

from .forms import (
    IntBinaryForm,
    ModPForm,
    format_form,
    gcd_modp_forms,
    modp_exact_divide,
    resultant,
)


class MapError(ValueError):
    """Invalid map data."""


class DegreeMismatch(MapError):
    pass


class CommonFactor(MapError):
    pass


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class ProjPointQ:
    """A point [x:y] of P^1(Q) with coprime integer coordinates, y > 0 or [1:0]."""

    x: int
    y: int

    def __post_init__(self):
        x, y = int(self.x), int(self.y)
        if x == 0 and y == 0:
            raise ValueError("[0:0] is not a point")
        g = math.gcd(x, y)
        if y < 0 or (y == 0 and x < 0):
            g = -g
        object.__setattr__(self, "x", x // g)
        object.__setattr__(self, "y", y // g)

    @classmethod
    def infinity(cls) -> "ProjPointQ":
        return cls(1, 0)

    @classmethod
    def of(cls, value) -> "ProjPointQ":
        """From an int, a Fraction, a string like '-1/4', or the string 'inf'."""
        if isinstance(value, ProjPointQ):
            return value
        if isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "oo"):
            return cls.infinity()
        q = Fraction(value)
        return cls(q.numerator, q.denominator)

    def is_infinity(self) -> bool:
        return self.y == 0

    def to_fraction(self) -> Fraction | None:
        return None if self.y == 0 else Fraction(self.x, self.y)

    def reduce(self, p: int) -> "ProjPointFp":
        return ProjPointFp(p, self.x, self.y)

    def __str__(self) -> str:
        if self.y == 0:
            return "inf"
        return str(self.x) if self.y == 1 else f"{self.x}/{self.y}"


@dataclass(frozen=True, order=True)
class ProjPointFp:
    """A point of P^1(F_p), normalized so the last nonzero coordinate is 1."""

    p: int
    x: int
    y: int

    def __post_init__(self):
        p = self.p
        x, y = self.x % p, self.y % p
        if x == 0 and y == 0:
            raise ValueError("[0:0] is not a point")
        if y:
            x, y = x * pow(y, -1, p) % p, 1
        else:
            x = 1
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def is_infinity(self) -> bool:
        return self.y == 0

    def __str__(self) -> str:
        return "inf" if self.y == 0 else str(self.x)


def points_of_p1(p: int) -> list[ProjPointFp]:
    return [ProjPointFp(p, x, 1) for x in range(p)] + [ProjPointFp(p, 1, 0)]


# ---------------------------------------------------------------------------
# Maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalMap:
    """Phi([X:Y]) = [F(X,Y) : G(X,Y)] with deg F = deg G = d (formal degrees).

    Construct through :func:`new_map`, which enforces coprimality and strips
    the joint content, so the coefficient vector is a p-unit at every prime.
    """

    F: IntBinaryForm
    G: IntBinaryForm

    @property
    def degree(self) -> int:
        return self.F.degree

    def __str__(self) -> str:
        return map_to_expr(self)

    def __call__(self, point) -> ProjPointQ:
        return evaluate(self, ProjPointQ.of(point))

    def numerator_chart(self) -> list[int]:
        return self.F.chart_y1()

    def denominator_chart(self) -> list[int]:
        return self.G.chart_y1()


def new_map(F: IntBinaryForm, G: IntBinaryForm) -> RationalMap:
    """Build a normalized map from two forms of equal formal degree."""
    if F.degree != G.degree:
        raise DegreeMismatch(f"forms have different degrees {F.degree} and {G.degree}")
    if F.degree == 0:
        raise MapError("a map needs degree at least 1")
    if resultant(F, G) == 0:
        raise CommonFactor("F and G have a common factor (resultant is zero)")
    g = reduce(math.gcd, F.coeffs + G.coeffs, 0)
    lead = next(c for c in G.coeffs + F.coeffs if c)
    if lead < 0:
        g = -g
    return RationalMap(IntBinaryForm(tuple(c // g for c in F.coeffs)),
                       IntBinaryForm(tuple(c // g for c in G.coeffs)))


def map_from_charts(num: Sequence, den: Sequence) -> RationalMap:
    """Map x -> num(x)/den(x) from ascending rational coefficient lists."""
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in den]
    while num and num[-1] == 0:
        num.pop()
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        raise MapError("the zero function is constant")
    lcm = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in num + den), 1)
    d = max(len(num), len(den)) - 1
    F = IntBinaryForm.from_chart([int(c * lcm) for c in num], d)
    G = IntBinaryForm.from_chart([int(c * lcm) for c in den], d)
    return new_map(F, G)


def polynomial_map(coeffs_desc: Sequence) -> RationalMap:
    """The polynomial map with the given descending coefficients."""
    return map_from_charts(list(coeffs_desc)[::-1], [1])


def _poly_str(asc: Sequence[int]) -> str:
    terms = []
    for k in range(len(asc) - 1, -1, -1):
        c = asc[k]
        if c == 0:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        elif c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c}*{mono}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


def map_to_expr(phi: RationalMap) -> str:
    """Expanded expression in x that parses back to the same map."""
    num, den = phi.F.chart_y1(), phi.G.chart_y1()
    if den == [1]:
        return _poly_str(num)
    n = _poly_str(num)
    if len([c for c in num if c]) > 1:
        n = f"({n})"
    d = _poly_str(den)
    return f"{n}/{d}" if len(den) == 1 and den[0] > 0 else f"{n}/({d})"


def substitute(form: IntBinaryForm, A: IntBinaryForm, B: IntBinaryForm) -> IntBinaryForm:
    """form(A, B) for forms A, B of a common degree."""
    n = form.degree
    m = A.degree
    a_pows = [IntBinaryForm.one()]
    b_pows = [IntBinaryForm.one()]
    for _ in range(n):
        a_pows.append(a_pows[-1] * A)
        b_pows.append(b_pows[-1] * B)
    out = [0] * (n * m + 1)
    for i, c in enumerate(form.coeffs):
        if c:
            term = a_pows[n - i] * b_pows[i]
            for j, t in enumerate(term.coeffs):
                out[j] += c * t
    return IntBinaryForm(tuple(out))


def evaluate(phi: RationalMap, P: ProjPointQ) -> ProjPointQ:
    return ProjPointQ(phi.F(P.x, P.y), phi.G(P.x, P.y))


def compose(phi: RationalMap, psi: RationalMap) -> RationalMap:
    """phi o psi."""
    return new_map(substitute(phi.F, psi.F, psi.G), substitute(phi.G, psi.F, psi.G))


def iterate_map(phi: RationalMap, n: int) -> RationalMap:
    if n < 1:
        raise ValueError("iterate count must be at least 1")
    out = phi
    for _ in range(n - 1):
        out = compose(phi, out)
    return out


@dataclass(frozen=True)
class Moebius:
    """x -> (a x + b) / (c x + d) with integer entries."""

    a: int
    b: int
    c: int
    d: int

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def is_p_invertible(self, p: int) -> bool:
        return self.det % p != 0

    def as_map(self) -> RationalMap:
        if self.det == 0:
            raise MapError("singular matrix")
        return new_map(IntBinaryForm((self.a, self.b)), IntBinaryForm((self.c, self.d)))

    def inverse(self) -> "Moebius":
        return Moebius(self.d, -self.b, -self.c, self.a)

    @classmethod
    def identity(cls) -> "Moebius":
        return cls(1, 0, 0, 1)


def conjugate(alpha: Moebius, phi: RationalMap, beta: Moebius) -> RationalMap:
    """alpha o phi o beta."""
    if alpha.det == 0 or beta.det == 0:
        raise MapError("singular matrix")
    return compose(alpha.as_map(), compose(phi, beta.as_map()))


# ---------------------------------------------------------------------------
# Reduction mod p
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReducedMap:
    """Phi_p: the reduction [f:g] mod p with the common factor h stripped."""

    p: int
    f: ModPForm
    g: ModPForm
    f1: ModPForm
    g1: ModPForm
    stripped_degree: int

    @property
    def reduced_degree(self) -> int:
        return self.f1.degree

    def __call__(self, P: ProjPointFp) -> ProjPointFp:
        return evaluate_mod_p(self, P)

    def __str__(self) -> str:
        num = format_form(self.f1.coeffs)
        den = format_form(self.g1.coeffs)
        return f"[{num} : {den}] (mod {self.p})"


@lru_cache(maxsize=8192)
def reduce_map(phi: RationalMap, p: int) -> ReducedMap:
    f, g = ModPForm(p, phi.F.coeffs), ModPForm(p, phi.G.coeffs)
    h = gcd_modp_forms(f, g)
    return ReducedMap(p, f, g, modp_exact_divide(f, h), modp_exact_divide(g, h), h.degree)


def is_constant(red: ReducedMap) -> bool:
    """All 2x2 minors of the reduced coefficient rows vanish mod p."""
    a, b, p = red.f.coeffs, red.g.coeffs, red.p
    n = len(a)
    for i in range(n):
        for j in range(i + 1, n):
            if (a[i] * b[j] - a[j] * b[i]) % p:
                return False
    return True


def evaluate_mod_p(red: ReducedMap, P: ProjPointFp) -> ProjPointFp:
    u, v = red.f1(P.x, P.y), red.g1(P.x, P.y)
    if u == 0 and v == 0:
        raise RuntimeError("stripped reduction vanishes at a point; gcd strip is broken")
    return ProjPointFp(red.p, u, v)


def moebius_mod_p(m: Moebius, P: ProjPointFp) -> ProjPointFp:
    return ProjPointFp(P.p, m.a * P.x + m.b * P.y, m.c * P.x + m.d * P.y)
