"""Binary forms over Z and over F_p.

A form of degree n is stored as the coefficient tuple ``(c_0, ..., c_n)``
with ``c_i`` the coefficient of ``X^(n-i) Y^i``. Read left to right this is
the dehomogenization ``x = X/Y`` in descending powers; read right to left it
is the chart ``y = Y/X`` in descending powers. The multiplicity of the root
at infinity ``[1:0]`` is the number of leading zero coefficients.

Univariate helpers below work on *ascending* coefficient lists with no
trailing zeros (``[]`` is the zero polynomial).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

# ---------------------------------------------------------------------------
# Univariate polynomials over Z (ascending lists)
# ---------------------------------------------------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_deriv(a: Sequence[int]) -> list[int]:
    return _trim([i * c for i, c in enumerate(a)][1:])


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim(out)


def poly_sub(a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


def poly_content(a: Sequence[int]) -> int:
    return reduce(math.gcd, a, 0)


def poly_primitive(a: Sequence[int]) -> list[int]:
    """Divide out the content and make the leading coefficient positive."""
    if not a:
        return []
    g = poly_content(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def poly_prem(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Pseudo-remainder of a by b up to a nonzero constant (b nonzero)."""
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while r and len(r) - 1 >= db:
        lr, shift = r[-1], len(r) - 1 - db
        r = [c * lb for c in r]
        for j, bj in enumerate(b):
            r[j + shift] -= lr * bj
        _trim(r)
        g = poly_content(r)
        if g > 1:
            r = [c // g for c in r]
    return r


def poly_gcd(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Primitive gcd over Z[x] (primitive polynomial remainder sequence)."""
    a, b = poly_primitive(a), poly_primitive(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [1]
        a, b = b, poly_primitive(poly_prem(a, b))
    return a


def poly_divexact(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact quotient a / b in Z[x]; raises ArithmeticError if b does not divide a."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    if len(r) - 1 < db:
        if r:
            raise ArithmeticError("inexact polynomial division")
        return []
    q = [0] * (len(r) - db)
    for shift in range(len(r) - 1 - db, -1, -1):
        lr = r[shift + db]
        if lr % lb:
            raise ArithmeticError("inexact polynomial division")
        c = lr // lb
        q[shift] = c
        if c:
            for j, bj in enumerate(b):
                r[j + shift] -= c * bj
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return _trim(q)


def poly_eval(a: Sequence[int], x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# Univariate polynomials over F_p (ascending lists, residues in [0, p))
# ---------------------------------------------------------------------------


def modp_trim(a: Sequence[int], p: int) -> list[int]:
    return _trim([c % p for c in a])


def modp_deriv(a: Sequence[int], p: int) -> list[int]:
    return _trim([(i * c) % p for i, c in enumerate(a)][1:])


def modp_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    return modp_trim(poly_mul(a, b), p)


def modp_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(r) - 1 < db:
        return [], r
    q = [0] * (len(r) - db)
    for shift in range(len(r) - 1 - db, -1, -1):
        c = r[shift + db] * inv % p
        q[shift] = c
        if c:
            for j, bj in enumerate(b):
                r[j + shift] = (r[j + shift] - c * bj) % p
    return _trim(q), _trim(r)


def modp_monic(a: Sequence[int], p: int) -> list[int]:
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def modp_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Monic gcd over F_p (gcd(0, 0) = 0)."""
    a, b = modp_trim(a, p), modp_trim(b, p)
    while b:
        a, b = b, modp_divmod(a, b, p)[1]
    return modp_monic(a, p)


# ---------------------------------------------------------------------------
# Determinants and resultants
# ---------------------------------------------------------------------------


def bareiss_det(matrix: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    m = [row[:] for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def sylvester_matrix(a: Sequence[int], b: Sequence[int]) -> list[list[int]]:
    """Sylvester matrix of two coefficient lists given in *descending* order.

    The formal degrees are ``len(a) - 1`` and ``len(b) - 1``; leading zeros
    are kept, which is what makes the homogeneous resultant see a common
    root at infinity.
    """
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(a) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(b) + [0] * (size - n - 1 - i))
    return rows


# ---------------------------------------------------------------------------
# Binary forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntBinaryForm:
    """Homogeneous form sum c_i X^(n-i) Y^i with integer coefficients."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValueError("a form needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def is_primitive(self) -> bool:
        if self.content != 1:
            return False
        return next(c for c in self.coeffs if c) > 0

    @property
    def infinity_multiplicity(self) -> int:
        """Power of Y dividing the form, i.e. the multiplicity of [1:0]."""
        k = 0
        for c in self.coeffs:
            if c:
                break
            k += 1
        return k

    @property
    def zero_multiplicity(self) -> int:
        """Power of X dividing the form, i.e. the multiplicity of [0:1]."""
        k = 0
        for c in reversed(self.coeffs):
            if c:
                break
            k += 1
        return k

    def chart_y1(self) -> list[int]:
        """Dehomogenization f(x) = F(x, 1), ascending."""
        return _trim(list(reversed(self.coeffs)))

    def chart_x1(self) -> list[int]:
        """Dehomogenization F(1, y), ascending in y."""
        return _trim(list(self.coeffs))

    @classmethod
    def from_chart(cls, a: Sequence[int], degree: int | None = None) -> "IntBinaryForm":
        """Homogenize the ascending polynomial ``a`` to the given formal degree."""
        a = _trim(list(a))
        if degree is None:
            degree = max(len(a) - 1, 0)
        if len(a) - 1 > degree:
            raise ValueError("polynomial degree exceeds the formal degree")
        desc = [0] * (degree + 1)
        for k, c in enumerate(a):
            desc[degree - k] = c
        return cls(tuple(desc))

    @classmethod
    def one(cls) -> "IntBinaryForm":
        return cls((1,))

    def __call__(self, x, y):
        n = self.degree
        return sum(c * x ** (n - i) * y**i for i, c in enumerate(self.coeffs))

    def __mul__(self, other: "IntBinaryForm") -> "IntBinaryForm":
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntBinaryForm(tuple(out))

    def __pow__(self, k: int) -> "IntBinaryForm":
        out = IntBinaryForm.one()
        for _ in range(k):
            out = out * self
        return out

    def __neg__(self) -> "IntBinaryForm":
        return IntBinaryForm(tuple(-c for c in self.coeffs))

    def __add__(self, other: "IntBinaryForm") -> "IntBinaryForm":
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        return IntBinaryForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "IntBinaryForm") -> "IntBinaryForm":
        return self + (-other)

    def scale(self, k: int) -> "IntBinaryForm":
        return IntBinaryForm(tuple(k * c for c in self.coeffs))

    def d_dx(self) -> "IntBinaryForm":
        n = self.degree
        if n == 0:
            return IntBinaryForm((0,))
        return IntBinaryForm(tuple((n - i) * c for i, c in enumerate(self.coeffs[:-1])))

    def d_dy(self) -> "IntBinaryForm":
        if self.degree == 0:
            return IntBinaryForm((0,))
        return IntBinaryForm(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def times_y(self, k: int = 1) -> "IntBinaryForm":
        return IntBinaryForm((0,) * k + self.coeffs)

    def times_x(self, k: int = 1) -> "IntBinaryForm":
        return IntBinaryForm(self.coeffs + (0,) * k)

    def __str__(self) -> str:
        return format_form(self.coeffs)


def format_form(coeffs: Sequence[int]) -> str:
    n = len(coeffs) - 1
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = []
        for var, e in (("X", n - i), ("Y", i)):
            if e == 1:
                mono.append(var)
            elif e > 1:
                mono.append(f"{var}^{e}")
        body = "*".join(mono)
        if not body:
            terms.append(str(c))
        elif c == 1:
            terms.append(body)
        elif c == -1:
            terms.append("-" + body)
        else:
            terms.append(f"{c}*{body}")
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


def primitive_part(a: IntBinaryForm) -> IntBinaryForm:
    """Divide out the content and make the first nonzero coefficient positive."""
    if a.is_zero():
        raise ValueError("zero form")
    g = a.content
    if next(c for c in a.coeffs if c) < 0:
        g = -g
    return IntBinaryForm(tuple(c // g for c in a.coeffs))


def exact_divide(a: IntBinaryForm, b: IntBinaryForm) -> IntBinaryForm:
    """Exact quotient a / b of forms over Z; raises ArithmeticError otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero form")
    if a.is_zero():
        return IntBinaryForm((0,) * (a.degree - b.degree + 1))
    k = b.infinity_multiplicity
    if a.infinity_multiplicity < k:
        raise ArithmeticError("inexact form division")
    q = poly_divexact(a.chart_y1(), b.chart_y1())
    return IntBinaryForm.from_chart(q, a.degree - b.degree)


def gcd_forms(a: IntBinaryForm, b: IntBinaryForm) -> IntBinaryForm:
    """Primitive gcd of two forms; the power of Y (root at infinity) is tracked explicitly."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero forms")
    if a.is_zero():
        return primitive_part(b)
    if b.is_zero():
        return primitive_part(a)
    k = min(a.infinity_multiplicity, b.infinity_multiplicity)
    g = poly_gcd(a.chart_y1(), b.chart_y1())
    return primitive_part(IntBinaryForm.from_chart(g, len(g) - 1 + k))


def radical(a: IntBinaryForm) -> IntBinaryForm:
    """Product of the distinct irreducible factors, primitive."""
    if a.is_zero():
        raise ValueError("zero form")
    f = a.chart_y1()
    g = poly_gcd(f, poly_deriv(f)) if len(f) > 1 else [1]
    r = poly_primitive(poly_divexact(f, g))
    extra = 1 if a.infinity_multiplicity else 0
    return IntBinaryForm.from_chart(r, len(r) - 1 + extra)


def squarefree_decomposition(a: IntBinaryForm) -> list[tuple[IntBinaryForm, int]]:
    """Yun's algorithm on the chart Y=1, with the root at infinity patched in.

    Returns ``[(A_i, i), ...]`` with each ``A_i`` primitive, squarefree, of
    positive degree and pairwise coprime, such that ``a = unit * prod A_i^i``.
    Sorted by multiplicity.
    """
    if a.is_zero():
        raise ValueError("zero form")
    parts: dict[int, list[int]] = {}
    f = poly_primitive(a.chart_y1())
    if len(f) > 1:
        df = poly_deriv(f)
        c = poly_gcd(f, df)
        w = poly_divexact(f, c)
        y = poly_divexact(df, c)
        z = poly_sub(y, poly_deriv(w))
        i = 1
        while len(w) > 1:
            g = poly_gcd(w, z)
            if len(g) > 1:
                parts[i] = g
            w = poly_divexact(w, g)
            y = poly_divexact(z, g)
            z = poly_sub(y, poly_deriv(w))
            i += 1
    out = {i: IntBinaryForm.from_chart(poly_primitive(g)) for i, g in parts.items()}
    k = a.infinity_multiplicity
    if k:
        out[k] = out[k].times_y() if k in out else IntBinaryForm((0, 1))
    return [(out[i], i) for i in sorted(out)]


def resultant(a: IntBinaryForm, b: IntBinaryForm) -> int:
    """Sylvester resultant of two forms at their formal degrees."""
    if a.degree == 0 and b.degree == 0:
        return 1
    return bareiss_det(sylvester_matrix(a.coeffs, b.coeffs))


def chart_collision_integers(a: IntBinaryForm) -> list[int]:
    """Integers whose prime divisors include every p at which ``a`` acquires a repeated root.

    For each affine chart, the resultant of the dehomogenized polynomial and
    its derivative (taken at their actual degrees). A repeated root mod p is
    finite in at least one chart, so the union of prime divisors is a
    superset of the collision primes of a squarefree primitive form.
    """
    out = []
    for chart in (a.chart_y1(), a.chart_x1()):
        if len(chart) < 2:
            continue
        d = poly_deriv(chart)
        val = bareiss_det(sylvester_matrix(chart[::-1], d[::-1]))
        if val == 0:
            raise ValueError("form is not squarefree")
        out.append(val)
    return out


# ---------------------------------------------------------------------------
# Forms over F_p
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModPForm:
    """Binary form over F_p, same coefficient convention as IntBinaryForm."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(c % self.p for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def infinity_multiplicity(self) -> int:
        k = 0
        for c in self.coeffs:
            if c:
                break
            k += 1
        return k

    def chart_y1(self) -> list[int]:
        return _trim(list(reversed(self.coeffs)))

    @classmethod
    def from_chart(cls, p: int, a: Sequence[int], degree: int) -> "ModPForm":
        a = modp_trim(a, p)
        desc = [0] * (degree + 1)
        for k, c in enumerate(a):
            desc[degree - k] = c
        return cls(p, tuple(desc))

    def __call__(self, x: int, y: int) -> int:
        n = self.degree
        p = self.p
        return sum(c * pow(x, n - i, p) * pow(y, i, p) for i, c in enumerate(self.coeffs)) % p

    def __str__(self) -> str:
        return format_form(self.coeffs) + f" (mod {self.p})"


def reduce_form(a: IntBinaryForm, p: int) -> ModPForm:
    """Coefficientwise reduction of a form with content 1 (the sign is irrelevant here)."""
    if a.content != 1:
        raise ValueError("reduce_form expects a primitive form; normalize first")
    return ModPForm(p, a.coeffs)


def squarefree_mod_p(a: ModPForm) -> bool:
    """True iff ``a`` has no repeated root in P^1 over the algebraic closure of F_p."""
    if a.is_zero():
        raise ValueError("zero form")
    if a.infinity_multiplicity > 1:
        return False
    f = a.chart_y1()
    if len(f) <= 1:
        return True
    g = modp_gcd(f, modp_deriv(f, a.p), a.p)
    return len(g) == 1


def gcd_modp_forms(a: ModPForm, b: ModPForm) -> ModPForm:
    """Monic gcd of two forms over F_p (zero forms allowed, not both)."""
    p = a.p
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero forms")
    if a.is_zero():
        a, b = b, a
    if b.is_zero():
        f = modp_monic(a.chart_y1(), p)
        return ModPForm.from_chart(p, f, a.degree)
    k = min(a.infinity_multiplicity, b.infinity_multiplicity)
    g = modp_gcd(a.chart_y1(), b.chart_y1(), p)
    return ModPForm.from_chart(p, g, len(g) - 1 + k)


def modp_exact_divide(a: ModPForm, b: ModPForm) -> ModPForm:
    p = a.p
    if a.is_zero():
        return ModPForm(p, (0,) * (a.degree - b.degree + 1))
    q, r = modp_divmod(a.chart_y1(), b.chart_y1(), p)
    if r or a.infinity_multiplicity < b.infinity_multiplicity:
        raise ArithmeticError("inexact form division mod p")
    return ModPForm.from_chart(p, q, a.degree - b.degree)


def modp_wronskian(f: ModPForm, g: ModPForm) -> ModPForm:
    """Wronskian form Y^(2n-2) (f'g - fg')(X/Y) of two forms of formal degree n over F_p.

    Computed as (F_X G - F G_X) / Y, which avoids the factor n carried by
    the Euler-style Jacobian F_X G_Y - F_Y G_X (that one vanishes
    identically whenever p divides n).
    """
    p, n = f.p, f.degree
    if n == 0:
        return ModPForm(p, (0,))
    fi = IntBinaryForm(f.coeffs)
    gi = IntBinaryForm(g.coeffs)
    w = fi.d_dx() * gi - fi * gi.d_dx()
    # w has formal degree 2n - 1 and its X^(2n-1) coefficient is zero
    return ModPForm(p, w.coeffs[1:])
