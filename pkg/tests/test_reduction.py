from __future__ import annotations

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from goodred.forms import IntBinaryForm, primitive_part, resultant
from goodred.maps import ProjPointQ, conjugate, iterate_map, new_map
from goodred.parse import parse_map
from goodred.reduction import (
    HypothesisFails,
    NotNormalPosition,
    cgr_bad_primes,
    cgr_test,
    degree2_verify,
    frobenius_factors,
    galois_hypothesis_test,
    galois_prop_verify,
    inseparable_primes,
    leading_coeff_identity_check,
    lemma7_conditions,
    ramification_data,
    separability_paths,
    separability_test,
    sgr_bad_primes,
    sgr_paths,
    sgr_test,
    theorem1_verify,
    wronskian_form,
)
from goodred.roots import rational_roots

from conftest import SMALL_PRIMES, X, Y, from_sympy, maps, moebius, to_sympy

F = IntBinaryForm
pts = ProjPointQ.of


def roots(form):
    return set(rational_roots(form))


# --- ramification data ------------------------------------------------------------


def test_ramification_of_x_times_x_minus_1():
    data = ramification_data(parse_map("x*(x-1)"))
    assert data.W == F((0, 2, -1))
    assert roots(data.radW) == {pts("inf"), pts("1/2")}
    assert roots(data.radB) == {pts("inf"), pts("-1/4")}


def test_ramification_of_x_minus_1_squared():
    data = ramification_data(parse_map("(x-1)^2"))
    assert data.radW == F((0, 1, -1))
    assert roots(data.radW) == {pts("inf"), pts(1)}
    assert roots(data.radB) == {pts("inf"), pts(0)}


def test_ramification_of_quartic_example():
    data = ramification_data(parse_map("-3*x^4+4*x^3"))
    assert data.decomposition == ((F((1, -1)), 1), (F((1, 0)), 2), (F((0, 1)), 3))
    indices = {str(rational_roots(a)[0]): e for a, e in data.ramification_indices()}
    assert indices == {"1": 2, "0": 3, "inf": 4}
    assert roots(data.radB) == {pts(0), pts(1), pts("inf")}


def test_leading_coefficient_identity_examples():
    assert leading_coeff_identity_check(parse_map("x*(x-1)"))
    assert leading_coeff_identity_check(parse_map("x^3"))
    assert leading_coeff_identity_check(parse_map("-3*x^4+4*x^3"))
    assert wronskian_form(parse_map("x*(x-1)")).chart_y1() == [-1, 2]
    with pytest.raises(NotNormalPosition):
        leading_coeff_identity_check(parse_map("(x+1)/(x-1)"))


@given(maps(2, 4, 5))
def test_riemann_hurwitz(phi):
    data = ramification_data(phi)
    assert data.W_raw.degree == 2 * phi.degree - 2
    assert data.riemann_hurwitz_sum() == 2 * phi.degree - 2


@given(maps(2, 3, 4))
def test_euler_jacobian_is_degree_times_wronskian(phi):
    jac = phi.F.d_dx() * phi.G.d_dy() - phi.F.d_dy() * phi.G.d_dx()
    assert jac == wronskian_form(phi).scale(phi.degree)


@given(maps(2, 3, 4))
def test_branch_form_matches_sympy_elimination(phi):
    data = ramification_data(phi)
    # with X^n terms present the chart resultant equals the formal one up to sign
    assume(data.W.coeffs[0] != 0 and (phi.F.coeffs[0], phi.G.coeffs[0]) != (0, 0))
    U, V = sympy.symbols("U V")
    elim = sympy.resultant(
        sympy.expand(V * to_sympy(phi.F) - U * to_sympy(phi.G)).subs(Y, 1),
        to_sympy(data.W).subs(Y, 1),
        X,
    )
    expected = from_sympy(sympy.expand(elim).subs({U: X, V: Y}, simultaneous=True), data.B.degree)
    assert primitive_part(data.B) == primitive_part(expected)


@given(maps(2, 4, 5))
def test_fiber_cofactor_is_coprime_to_ramification(phi):
    data = ramification_data(phi)
    assert data.res_radW_S != 0
    assert data.radC.degree == data.radW.degree + data.S.degree


# --- per-prime verdicts -------------------------------------------------------------


def test_quartic_example_at_3():
    phi = parse_map("-3*x^4+4*x^3")
    assert not sgr_test(phi, 3)
    assert not separability_test(phi, 3)
    assert cgr_test(phi, 3).cgr
    c1, c2, c3 = lemma7_conditions(phi, 3)
    assert c1 and not c3
    rep = theorem1_verify(phi, 3)
    assert (rep.sgr, rep.cgr, rep.separable, rep.reduced_degree) == (False, True, False, 3)
    assert rep.theorem1_consistent and rep.consistent


@pytest.mark.parametrize("p", [2, 3, 5])
def test_x_to_the_p(p):
    phi = parse_map(f"x^{p}")
    assert sgr_test(phi, p)
    assert cgr_test(phi, p).cgr
    assert not separability_test(phi, p)


def test_sgr_examples():
    for p in SMALL_PRIMES:
        assert sgr_test(parse_map("x*(x-1)"), p)
    assert sgr_bad_primes(parse_map("x*(x-1)")).primes == ()
    assert 3 in sgr_bad_primes(parse_map("-3*x^4+4*x^3"))
    assert sgr_bad_primes(parse_map("36*x^2")).primes == (2, 3)


def test_separability_examples():
    assert separability_test(parse_map("x^2"), 3)
    assert inseparable_primes(parse_map("x^3")).primes == (3,)
    assert inseparable_primes(parse_map("x*(x-1)")).primes == ()


def test_cgr_examples():
    assert not cgr_test(iterate_map(parse_map("(x-1)^2"), 2), 2).cgr
    assert not cgr_test(parse_map("x*(x-1)"), 2).cgr
    for p in SMALL_PRIMES[1:]:
        assert cgr_test(parse_map("x*(x-1)"), p).cgr
    assert cgr_bad_primes(parse_map("(x-1)^2")).primes == ()
    assert cgr_bad_primes(parse_map("x*(x-1)")).primes == (2,)
    phi2 = iterate_map(parse_map("(x-1)^2"), 2)
    assert cgr_bad_primes(phi2).primes == (2,)
    assert sgr_bad_primes(phi2).primes == ()
    assert roots(ramification_data(phi2).radW) == {pts(0), pts(1), pts(2), pts("inf")}


def test_lemma7_examples():
    assert lemma7_conditions(parse_map("x^2"), 2)[2] is False
    assert lemma7_conditions(parse_map("-3*x^4+4*x^3"), 3)[2] is False
    assert lemma7_conditions(parse_map("x*(x-1)"), 5) == (True, True, True)


def test_theorem1_examples():
    rep = theorem1_verify(parse_map("x^2+x"), 2)
    assert rep.separable and rep.sgr and not rep.branch_nonsingular and not rep.cgr
    assert rep.theorem1_consistent
    rep = theorem1_verify(parse_map("x*(x-1)"), 3)
    assert rep.separable and rep.sgr and rep.branch_nonsingular and rep.cgr and rep.consistent


def test_fault_injection_flags_inseparable_example():
    phi = parse_map("-3*x^4+4*x^3")
    assert theorem1_verify(phi, 3).theorem1_consistent
    assert not theorem1_verify(phi, 3, separability_guard=False).theorem1_consistent


@given(maps(2, 4, 6), st.sampled_from(SMALL_PRIMES))
def test_theorem1_and_lemma7_on_random_maps(phi, p):
    rep = theorem1_verify(phi, p)
    assert rep.theorem1_consistent
    assert rep.lemma7_consistent
    assert rep.large_prime_consistent is not False
    assert sgr_paths(phi, p)[0] == sgr_paths(phi, p)[1]
    assert separability_paths(phi, p)[0] == separability_paths(phi, p)[1]


@given(maps(2, 3, 4), moebius(3), moebius(3), st.sampled_from(SMALL_PRIMES))
def test_verdicts_invariant_under_p_invertible_moebius(phi, alpha, beta, p):
    assume(alpha.is_p_invertible(p) and beta.is_p_invertible(p))
    a = theorem1_verify(phi, p)
    b = theorem1_verify(conjugate(alpha, phi, beta), p)
    keys = ("sgr", "cgr", "separable", "nonconstant", "ram_nonsingular", "branch_nonsingular", "reduced_degree")
    assert [getattr(a, k) for k in keys] == [getattr(b, k) for k in keys]


@given(maps(2, 3, 5), st.sampled_from(SMALL_PRIMES))
def test_verdicts_invariant_under_sign(phi, p):
    flipped = new_map(-phi.F, phi.G)
    neg = new_map(phi.F.scale(-1), phi.G.scale(-1))
    assert neg == phi
    assert theorem1_verify(phi, p).cgr == theorem1_verify(flipped, p).cgr


# --- propositions ---------------------------------------------------------------------


def test_galois_examples():
    assert galois_hypothesis_test(parse_map("x^2"))
    assert galois_hypothesis_test(parse_map("x^5"))
    assert galois_hypothesis_test(parse_map("x*(x-1)"))
    assert not galois_hypothesis_test(parse_map("x^3-3*x"))
    with pytest.raises(HypothesisFails):
        galois_prop_verify(parse_map("x^3-3*x"), 5)
    assert galois_prop_verify(parse_map("x^2"), 3)
    assert galois_prop_verify(parse_map("x^2"), 2)
    assert galois_prop_verify(parse_map("4*x^2"), 2)


@given(maps(2, 2, 6), st.sampled_from(SMALL_PRIMES))
def test_quadratic_maps_satisfy_galois_proposition(phi, p):
    assert galois_hypothesis_test(phi)
    assert galois_prop_verify(phi, p)


def test_degree2_examples():
    assert degree2_verify(parse_map("x^2"), 2)
    assert frobenius_factors(parse_map("x^2"))
    phi = parse_map("x^2+x")
    assert not frobenius_factors(phi) and not cgr_test(phi, 2).cgr
    assert degree2_verify(phi, 2)
    assert degree2_verify(parse_map("x^2+3*x"), 3)
    with pytest.raises(ValueError):
        degree2_verify(parse_map("x^3"), 3)
