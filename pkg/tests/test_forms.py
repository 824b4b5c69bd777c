from __future__ import annotations

import itertools
import math
from functools import reduce

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import assume, given
from hypothesis import strategies as st

from goodred.forms import (
    IntBinaryForm,
    ModPForm,
    bareiss_det,
    chart_collision_integers,
    exact_divide,
    gcd_forms,
    modp_wronskian,
    primitive_part,
    radical,
    reduce_form,
    resultant,
    squarefree_decomposition,
    squarefree_mod_p,
)

from conftest import SMALL_PRIMES, X, Y, forms, from_sympy, to_sympy

F = IntBinaryForm


def linear(a, b):
    """a X - b Y, whose root is [b:a]."""
    return F((a, -b))


def product(factors, degree_if_empty=0):
    return reduce(lambda u, v: u * v, factors, F((1,) + (0,) * degree_if_empty))


# --- worked examples ---------------------------------------------------------


def test_primitive_part_examples():
    assert primitive_part(F((0, 4, -2))) == F((0, 2, -1))
    assert primitive_part(F((1, 0))) == F((1, 0))
    assert primitive_part(F((-6, 0, 0))) == F((1, 0, 0))
    with pytest.raises(ValueError):
        primitive_part(F((0, 0)))


def test_gcd_examples():
    assert gcd_forms(F((0, 1, 0)), F((0, 0, 1))) == F((0, 1))
    assert gcd_forms(F((1, -1)), F((1, 1))).degree == 0
    assert gcd_forms(F((1, 0, -1)), F((1, -2, 1))) == F((1, -1))


def test_squarefree_examples():
    assert squarefree_decomposition(F((0, 1, 0, 0))) == [(F((0, 1)), 1), (F((1, 0)), 2)]
    # -48 X^2 Y^3 (X - Y): the Wronskian of -3x^4 + 4x^3
    w = F((1, 0)) ** 2 * F((0, 1)) ** 3 * F((1, -1))
    assert squarefree_decomposition(w.scale(-48)) == [
        (F((1, -1)), 1), (F((1, 0)), 2), (F((0, 1)), 3)]
    assert squarefree_decomposition(F((0, 4, -4))) == [(F((0, 1, -1)), 1)]


def test_resultant_examples():
    assert resultant(F((1, 0)), F((0, 1))) == 1
    assert resultant(F((1, -2)), F((1, -3))) == -1
    assert resultant(F((1, -1, 0)), F((0, 0, 1))) == 1


def test_reduce_form_examples():
    assert reduce_form(F((-3, 4, 0, 0, 0)), 3).coeffs == (0, 1, 0, 0, 0)
    assert reduce_form(F((1, -1)), 5).coeffs == (1, 4)
    assert reduce_form(F((0, 2, -1)), 2).coeffs == (0, 0, 1)
    with pytest.raises(ValueError):
        reduce_form(F((2, 4)), 3)


def test_squarefree_mod_p_examples():
    xy_x_minus_y = F((0, 1, -1))
    assert squarefree_mod_p(reduce_form(xy_x_minus_y, 3))
    assert not squarefree_mod_p(ModPForm(2, (0, 0, 1)))
    assert not squarefree_mod_p(reduce_form(F((0, 2, -1)), 2))


def test_bareiss_matches_sympy():
    m = [[2, -1, 0, 3], [1, 4, -2, 0], [0, 5, 1, -1], [7, 0, 2, 2]]
    assert bareiss_det(m) == sympy.Matrix(m).det()


def test_wronskian_mod_p_of_pth_power_vanishes():
    f = ModPForm(3, (1, 0, 0, 0))
    g = ModPForm(3, (0, 0, 0, 1))
    assert modp_wronskian(f, g).is_zero()


def test_sign_normalization_of_forms_does_not_change_verdicts():
    a = F((0, 2, -1))
    for p in SMALL_PRIMES:
        assert squarefree_mod_p(reduce_form(a, p)) == squarefree_mod_p(reduce_form(-a, p))


# --- oracle comparisons ------------------------------------------------------


@given(forms(1, 4), forms(1, 4))
def test_resultant_matches_sympy_when_leading_terms_present(a, b):
    assume(a.coeffs[0] and b.coeffs[0])
    x = sympy.Symbol("x")
    fa = sum(c * x ** (a.degree - i) for i, c in enumerate(a.coeffs))
    fb = sum(c * x ** (b.degree - i) for i, c in enumerate(b.coeffs))
    assert resultant(a, b) == sylvester(fa, fb, x).det()
    # sympy.resultant follows a different sign convention
    assert abs(resultant(a, b)) == abs(sympy.resultant(fa, fb, x))


@given(forms(0, 4), forms(0, 4))
def test_resultant_vanishes_iff_common_factor(a, b):
    assume(a.degree + b.degree >= 1)
    assert (resultant(a, b) == 0) == (gcd_forms(a, b).degree >= 1)


@given(forms(1, 4), forms(1, 4))
def test_gcd_matches_sympy(a, b):
    g = gcd_forms(a, b)
    expected = sympy.gcd(to_sympy(a), to_sympy(b))
    expected_form = primitive_part(from_sympy(expected, g.degree)) if expected.free_symbols else F((1,))
    assert g == expected_form


@given(forms(1, 6, bound=4))
def test_squarefree_decomposition_reassembles(a):
    parts = squarefree_decomposition(a)
    rebuilt = product([f**i for f, i in parts], a.degree - sum(f.degree * i for f, i in parts))
    # the unit is the content with sign
    unit = a.content * (1 if next(c for c in a.coeffs if c) > 0 else -1)
    if sum(f.degree * i for f, i in parts) == a.degree:
        assert rebuilt.scale(unit) == a
    for f, _ in parts:
        assert f.is_primitive and f.degree >= 1
    for (f, _), (g, _) in itertools.combinations(parts, 2):
        assert resultant(f, g) != 0


@given(forms(1, 6, bound=4))
def test_squarefree_decomposition_matches_sympy(a):
    parts = squarefree_decomposition(a)
    _, sym = sympy.sqf_list(to_sympy(a))
    expected = {}
    for fac, mult in sym:
        expected.setdefault(mult, 0)
        expected[mult] += sympy.Poly(fac, X, Y).total_degree()
    got = {}
    for f, i in parts:
        got[i] = got.get(i, 0) + f.degree
    assert got == expected


@given(forms(1, 6, bound=4))
def test_radical_is_squarefree_and_divides(a):
    r = radical(a)
    assert squarefree_decomposition(r) == [(r, 1)] or r.degree == 0
    exact_divide(a, r)  # divisibility is exact


def _normalize_point(t):
    a, b = t
    g = math.gcd(a, b)
    a, b = a // g, b // g
    return (0, 1) if a == 0 else (a, b)


def rational_root_forms():
    """Sorted lists of distinct points [b:a], encoded as (a, b) with a >= 0."""
    point = st.tuples(st.integers(0, 9), st.integers(-9, 9)).filter(lambda t: t != (0, 0))
    return st.lists(point.map(_normalize_point), min_size=2, max_size=5, unique=True).map(sorted)


@given(rational_root_forms())
def test_collision_oracle_for_rational_roots(points):
    form = primitive_part(product([linear(a, b) for a, b in points]))
    for p in SMALL_PRIMES:
        collide = any((a1 * b2 - a2 * b1) % p == 0 for (a1, b1), (a2, b2) in itertools.combinations(points, 2))
        assert squarefree_mod_p(reduce_form(form, p)) == (not collide)


@given(rational_root_forms(), rational_root_forms())
def test_resultant_is_product_of_cross_terms(p1, p2):
    a = product([linear(x, y) for x, y in p1])
    b = product([linear(x, y) for x, y in p2])
    cross = 1
    for (a1, b1) in p1:
        for (a2, b2) in p2:
            cross *= a1 * b2 - a2 * b1
    assert abs(resultant(a, b)) == abs(cross)


@given(rational_root_forms())
def test_collision_integers_cover_all_colliding_primes(points):
    form = primitive_part(product([linear(a, b) for a, b in points]))
    ints = chart_collision_integers(form)
    for p in SMALL_PRIMES:
        if not squarefree_mod_p(reduce_form(form, p)):
            assert any(n % p == 0 for n in ints)


@given(forms(1, 5, bound=4), st.sampled_from(SMALL_PRIMES))
def test_squarefree_mod_p_matches_sympy(a, p):
    a = primitive_part(a)
    red = reduce_form(a, p)
    # over F_p: squarefree as a form means the chart is squarefree and Y divides at most once
    x = sympy.Symbol("x")
    chart = [c % p for c in red.chart_y1()]
    finite_ok = True
    if len(chart) > 2:
        poly = sum(c * x**k for k, c in enumerate(chart))
        _, factors = sympy.factor_list(poly, modulus=p)
        finite_ok = all(m == 1 for _, m in factors)
    expected = red.infinity_multiplicity <= 1 and finite_ok
    assert squarefree_mod_p(red) == expected
