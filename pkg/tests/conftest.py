from __future__ import annotations

import sympy
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from goodred.forms import IntBinaryForm
from goodred.maps import CommonFactor, Moebius, new_map

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

X, Y = sympy.symbols("X Y")
SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


def forms(min_degree=0, max_degree=4, bound=6, nonzero=True):
    def build(coeffs):
        return IntBinaryForm(tuple(coeffs))

    out = st.integers(min_degree, max_degree).flatmap(
        lambda d: st.lists(st.integers(-bound, bound), min_size=d + 1, max_size=d + 1)
    ).map(build)
    if nonzero:
        out = out.filter(lambda f: not f.is_zero())
    return out


@st.composite
def maps(draw, min_degree=2, max_degree=3, bound=5):
    d = draw(st.integers(min_degree, max_degree))
    coeffs = st.lists(st.integers(-bound, bound), min_size=d + 1, max_size=d + 1)
    F = IntBinaryForm(tuple(draw(coeffs)))
    G = IntBinaryForm(tuple(draw(coeffs)))
    try:
        return new_map(F, G)
    except CommonFactor:
        assume(False)


@st.composite
def moebius(draw, bound=4):
    a, b, c, d = (draw(st.integers(-bound, bound)) for _ in range(4))
    assume(a * d - b * c != 0)
    return Moebius(a, b, c, d)


def to_sympy(form: IntBinaryForm):
    n = form.degree
    return sum(c * X ** (n - i) * Y**i for i, c in enumerate(form.coeffs))


def from_sympy(expr, degree: int) -> IntBinaryForm:
    poly = sympy.Poly(sympy.expand(expr), X, Y)
    coeffs = [0] * (degree + 1)
    for (i, j), c in poly.terms():
        assert i + j == degree
        coeffs[j] = int(c)
    return IntBinaryForm(tuple(coeffs))
