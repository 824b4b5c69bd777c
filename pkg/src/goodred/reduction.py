"""Good-reduction criteria for rational maps over Q.

Everything is decided with integer binary forms: collisions of algebraic
ramification or branch points modulo p are detected as repeated roots of
the reduction of a primitive squarefree form, so no algebraic numbers are
ever constructed.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from functools import cached_property, lru_cache

from .factor import DEFAULT_TRIAL_BOUND, factor_integer, primes_up_to
from .forms import (
    IntBinaryForm,
    ModPForm,
    chart_collision_integers,
    exact_divide,
    modp_wronskian,
    primitive_part,
    radical,
    reduce_form,
    resultant,
    squarefree_decomposition,
    squarefree_mod_p,
)
from .maps import RationalMap, is_constant, reduce_map, substitute


class InternalInconsistency(RuntimeError):
    """Two independent computations of the same quantity disagree."""


class HypothesisFails(ValueError):
    pass


class NotNormalPosition(ValueError):
    pass


def wronskian_form(phi: RationalMap) -> IntBinaryForm:
    """Homogenized f'g - fg' of degree 2d - 2, before any normalization.

    Equal to (F_X G - F G_X) / Y. The Euler-style Jacobian F_X G_Y - F_Y G_X
    is d times this form.
    """
    w = phi.F.d_dx() * phi.G - phi.F * phi.G.d_dx()
    assert w.coeffs[0] == 0
    return IntBinaryForm(w.coeffs[1:])


def _interpolate(ys: list[int]) -> list[int]:
    """Integer polynomial of degree < len(ys) taking the values ys at u = 0, 1, 2, ...

    Newton forward differences, kept integral by scaling with n! and
    dividing exactly at the end.
    """
    n = len(ys) - 1
    diffs = []
    row = list(ys)
    for _ in range(n + 1):
        diffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    fact_n = math.factorial(n)
    acc = [0] * (n + 1)
    falling = [1]  # u (u-1) ... (u-k+1), ascending
    for k, delta in enumerate(diffs):
        scale = delta * (fact_n // math.factorial(k))
        for j, c in enumerate(falling):
            acc[j] += scale * c
        falling = [0] + falling
        for j in range(len(falling) - 1):
            falling[j] -= k * falling[j + 1]
    if any(c % fact_n for c in acc):
        raise InternalInconsistency("interpolated branch form is not integral")
    return [c // fact_n for c in acc]


def branch_form(phi: RationalMap, W: IntBinaryForm) -> IntBinaryForm:
    """B(U, V) = Res_{X,Y}(V F - U G, W), a form of degree deg W in (U, V).

    Its roots are the images of the roots of W, with multiplicity. Computed
    by evaluating the integer resultant at deg W + 1 values of u = U/V and
    interpolating.
    """
    n = W.degree
    vals = [resultant(phi.F - phi.G.scale(u), W) for u in range(n + 1)]
    return IntBinaryForm.from_chart(_interpolate(vals), n)


@dataclass(frozen=True)
class RamificationData:
    """Wronskian, ramification and branch radicals of a map; fiber data on demand."""

    phi: RationalMap
    W_raw: IntBinaryForm
    W: IntBinaryForm
    decomposition: tuple[tuple[IntBinaryForm, int], ...]
    radW: IntBinaryForm
    B: IntBinaryForm
    radB: IntBinaryForm

    def ramification_indices(self) -> list[tuple[IntBinaryForm, int]]:
        """Pairs (A_i, e) where every root of A_i has ramification index e."""
        return [(a, i + 1) for a, i in self.decomposition]

    def riemann_hurwitz_sum(self) -> int:
        return sum(a.degree * i for a, i in self.decomposition)

    @cached_property
    def radC(self) -> IntBinaryForm:
        """Radical of radB(F, G), whose roots are the full critical fibers."""
        return radical(primitive_part(substitute(self.radB, self.phi.F, self.phi.G)))

    @cached_property
    def S(self) -> IntBinaryForm:
        """Unramified part of the critical fibers: radC / radW."""
        try:
            return primitive_part(exact_divide(self.radC, self.radW))
        except ArithmeticError as exc:
            raise InternalInconsistency(
                "ramification radical does not divide the critical-fiber radical") from exc

    @cached_property
    def res_radW_S(self) -> int:
        return resultant(self.radW, self.S)


@lru_cache(maxsize=4096)
def ramification_data(phi: RationalMap) -> RamificationData:
    d = phi.degree
    if d < 2:
        raise ValueError("ramification data needs degree at least 2")
    W_raw = wronskian_form(phi)
    W = primitive_part(W_raw)
    decomposition = tuple(squarefree_decomposition(W))
    radW = IntBinaryForm.one()
    for a, _ in decomposition:
        radW = radW * a
    B = branch_form(phi, W)
    radB = radical(primitive_part(B))
    return RamificationData(phi=phi, W_raw=W_raw, W=W, decomposition=decomposition,
                            radW=radW, B=B, radB=radB)


@lru_cache(maxsize=2048)
def map_resultant(phi: RationalMap) -> int:
    return resultant(phi.F, phi.G)


def leading_coeff_identity_check(phi: RationalMap) -> bool:
    """lc(f'g - fg') == lc(f) lc(g) (deg f - deg g) for maps with deg f > deg g."""
    f, g = phi.F.chart_y1(), phi.G.chart_y1()
    if len(f) <= len(g):
        raise NotNormalPosition("not in normal position: need deg f > deg g")
    w = phi.F.d_dx() * phi.G - phi.F * phi.G.d_dx()
    chart = w.chart_y1()
    return chart[-1] == f[-1] * g[-1] * (len(f) - len(g))


# ---------------------------------------------------------------------------
# Per-prime criteria
# ---------------------------------------------------------------------------


def sgr_paths(phi: RationalMap, p: int) -> tuple[bool, bool]:
    """S.G.R. decided from the resultant and from the degree of the stripped reduction."""
    return map_resultant(phi) % p != 0, reduce_map(phi, p).reduced_degree == phi.degree


def sgr_test(phi: RationalMap, p: int) -> bool:
    by_resultant, by_degree = sgr_paths(phi, p)
    if by_resultant != by_degree:
        raise InternalInconsistency(f"S.G.R. at {p}: resultant says {by_resultant}, degree says {by_degree}")
    return by_resultant


def is_pth_power(f1: ModPForm, g1: ModPForm) -> bool:
    """Both forms lie in F_p[X^p, Y^p], i.e. [f1:g1] is a p-th power."""
    p, n = f1.p, f1.degree
    for form in (f1, g1):
        for i, c in enumerate(form.coeffs):
            if c and ((n - i) % p or i % p):
                return False
    return True


def separability_paths(phi: RationalMap, p: int) -> tuple[bool, bool]:
    """Separability decided from the stripped Wronskian and from the p-th power test."""
    red = reduce_map(phi, p)
    return not modp_wronskian(red.f1, red.g1).is_zero(), not is_pth_power(red.f1, red.g1)


def separability_test(phi: RationalMap, p: int) -> bool:
    by_wronskian, by_root = separability_paths(phi, p)
    if by_wronskian != by_root:
        raise InternalInconsistency(f"separability at {p}: Wronskian says {by_wronskian}, p-th root says {by_root}")
    return by_wronskian


@dataclass(frozen=True)
class CGRVerdict:
    cgr: bool
    ram_nonsingular: bool
    branch_nonsingular: bool


def cgr_test(phi: RationalMap, p: int) -> CGRVerdict:
    data = ramification_data(phi)
    ram = squarefree_mod_p(reduce_form(data.radW, p))
    branch = squarefree_mod_p(reduce_form(data.radB, p))
    return CGRVerdict(ram and branch, ram, branch)


def lemma7_conditions(phi: RationalMap, p: int) -> tuple[bool, bool, bool]:
    """(Phi_p nonconstant, no ramification point collides with its critical fibers, p ∤ every e_P)."""
    data = ramification_data(phi)
    c1 = not is_constant(reduce_map(phi, p))
    c2 = squarefree_mod_p(reduce_form(data.radW, p)) and data.res_radW_S % p != 0
    c3 = all((i + 1) % p for a, i in data.decomposition if a.degree >= 1)
    return c1, c2, c3


@dataclass(frozen=True)
class ReductionReport:
    p: int
    degree: int
    reduced_degree: int
    sgr: bool
    cgr: bool
    separable: bool
    nonconstant: bool
    ram_nonsingular: bool
    branch_nonsingular: bool
    lemma7: tuple[bool, bool, bool]
    theorem1_consistent: bool
    lemma7_consistent: bool
    large_prime_consistent: bool | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def consistent(self) -> bool:
        return (self.theorem1_consistent and self.lemma7_consistent
                and self.large_prime_consistent is not False)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["lemma7"] = list(self.lemma7)
        out["notes"] = list(self.notes)
        return out


def theorem1_verify(phi: RationalMap, p: int, separability_guard: bool = True) -> ReductionReport:
    """Collect every verdict at p and check the implications between them.

    With ``separability_guard=False`` the equivalence cgr <=> (sgr and
    branch nonsingular) is demanded even for inseparable reductions, which
    is false in general and serves as fault injection.
    """
    if phi.degree < 2:
        raise ValueError("degree at least 2 required")
    red = reduce_map(phi, p)
    sgr = sgr_test(phi, p)
    sep = separability_test(phi, p)
    cg = cgr_test(phi, p)
    nonconstant = not is_constant(red)
    if nonconstant != (red.reduced_degree > 0):
        raise InternalInconsistency("2x2 minor test disagrees with the stripped degree")
    l7 = lemma7_conditions(phi, p)
    equivalence = cg.cgr == (sgr and cg.branch_nonsingular)
    t1 = equivalence if (sep or not separability_guard) else True
    l7_ok = all(l7) == (cg.cgr and sep)
    large = None
    notes = []
    if p > phi.degree:
        large = (sep == nonconstant) and (not cg.cgr or sgr == nonconstant)
    if not sep:
        notes.append("reduction inseparable: the equivalence is not required")
    if sgr and not nonconstant:
        raise InternalInconsistency("S.G.R. with a constant reduction")
    return ReductionReport(
        p=p,
        degree=phi.degree,
        reduced_degree=red.reduced_degree,
        sgr=sgr,
        cgr=cg.cgr,
        separable=sep,
        nonconstant=nonconstant,
        ram_nonsingular=cg.ram_nonsingular,
        branch_nonsingular=cg.branch_nonsingular,
        lemma7=l7,
        theorem1_consistent=t1,
        lemma7_consistent=l7_ok,
        large_prime_consistent=large,
        notes=tuple(notes),
    )


def galois_hypothesis_test(phi: RationalMap) -> bool:
    """Every point of every critical fiber is itself a ramification point."""
    return ramification_data(phi).S.degree == 0


def galois_prop_verify(phi: RationalMap, p: int) -> bool:
    if not galois_hypothesis_test(phi):
        raise HypothesisFails("hypothesis fails: some critical fiber has an unramified point")
    cg = cgr_test(phi, p)
    lhs = sgr_test(phi, p) and cg.cgr
    rhs = (not is_constant(reduce_map(phi, p))) and cg.ram_nonsingular
    return lhs == rhs


def frobenius_factors(phi: RationalMap) -> bool:
    """The stripped reduction mod 2 lies in F_2[X^2, Y^2]."""
    red = reduce_map(phi, 2)
    return is_pth_power(red.f1, red.g1)


def degree2_verify(phi: RationalMap, p: int) -> bool:
    if phi.degree != 2:
        raise ValueError("degree-2 map required")
    sgr = sgr_test(phi, p)
    rhs = cgr_test(phi, p).cgr and not is_constant(reduce_map(phi, p))
    if p == 2:
        return (sgr and frobenius_factors(phi)) == rhs
    return sgr == rhs


# ---------------------------------------------------------------------------
# Bad-prime enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeSet:
    primes: tuple[int, ...]
    complete: bool
    unfactored: tuple[int, ...] = ()

    def __iter__(self):
        return iter(self.primes)

    def __contains__(self, p) -> bool:
        return p in self.primes


def _candidate_primes(integers, extra=(), budget: int | None = None,
                      trial_bound: int = DEFAULT_TRIAL_BOUND) -> tuple[set[int], list[int]]:
    cands = set(extra)
    unfactored = []
    for n in integers:
        if n == 0:
            continue
        fac = factor_integer(n, trial_bound=trial_bound, budget=budget)
        cands.update(fac.primes)
        if not fac.complete:
            unfactored.append(fac.cofactor)
    return cands, unfactored


def sgr_bad_primes(phi: RationalMap, budget: int | None = None) -> PrimeSet:
    cands, unf = _candidate_primes([map_resultant(phi)], budget=budget)
    bad = tuple(sorted(p for p in cands if not sgr_test(phi, p)))
    return PrimeSet(bad, not unf, tuple(unf))


def collision_integers(phi: RationalMap) -> list[int]:
    data = ramification_data(phi)
    return chart_collision_integers(data.radW) + chart_collision_integers(data.radB)


def cgr_bad_primes(phi: RationalMap, budget: int | None = None) -> PrimeSet:
    cands, unf = _candidate_primes(collision_integers(phi), budget=budget)
    bad = tuple(sorted(p for p in cands if not cgr_test(phi, p).cgr))
    return PrimeSet(bad, not unf, tuple(unf))


def inseparable_primes(phi: RationalMap, budget: int | None = None) -> PrimeSet:
    data = ramification_data(phi)
    small = primes_up_to(2 * phi.degree - 2)
    cands, unf = _candidate_primes([data.W_raw.content, map_resultant(phi)], extra=small, budget=budget)
    bad = tuple(sorted(p for p in cands if not separability_test(phi, p)))
    return PrimeSet(bad, not unf, tuple(unf))
