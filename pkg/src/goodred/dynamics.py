"""Orbits, rational periodic and preperiodic points, Lattès maps, uniform bounds."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .factor import primes_up_to
from .forms import IntBinaryForm
from .maps import ProjPointQ, RationalMap, compose, evaluate, map_from_charts
from .roots import rational_roots


@dataclass(frozen=True)
class OrbitResult:
    points: tuple[ProjPointQ, ...]
    tail_length: int
    cycle_length: int
    budget_exceeded: bool

    @property
    def cycle(self) -> tuple[ProjPointQ, ...]:
        return self.points[self.tail_length :] if self.cycle_length else ()


def _bits(P: ProjPointQ) -> int:
    return max(abs(P.x).bit_length(), abs(P.y).bit_length())


def orbit(phi: RationalMap, P, max_steps: int = 1000, max_bits: int = 4096) -> OrbitResult:
    """Forward orbit of P until it closes up or a budget runs out."""
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    P = ProjPointQ.of(P)
    points = [P]
    index = {P: 0}
    for _ in range(max_steps):
        Q = evaluate(phi, points[-1])
        if Q in index:
            start = index[Q]
            return OrbitResult(tuple(points), start, len(points) - start, False)
        if _bits(Q) > max_bits:
            break
        index[Q] = len(points)
        points.append(Q)
    return OrbitResult(tuple(points), len(points), 0, True)


def two_adic_escape_check(phi: RationalMap, i_max: int) -> bool:
    """Phi^i(1/2) = odd / 2^(k_i) with k_1 = 2 and k_{i+1} = 2 k_i for i <= i_max."""
    if i_max < 1:
        raise ValueError("i_max must be at least 1")
    P = ProjPointQ(1, 2)
    k_expected = 2
    for _ in range(i_max):
        P = evaluate(phi, P)
        if P.y == 0 or P.x % 2 == 0:
            return False
        if P.y != 1 << k_expected:
            return False
        k_expected *= 2
    return True


def fixed_point_form(phi: RationalMap) -> IntBinaryForm:
    """X G - Y F, whose roots are the fixed points of phi."""
    return phi.G.times_x() - phi.F.times_y()


@dataclass
class PeriodicPoints:
    by_period: dict[int, list[ProjPointQ]]
    complete: bool = True
    skipped_periods: list[int] = field(default_factory=list)

    def all_points(self) -> set[ProjPointQ]:
        return {P for pts in self.by_period.values() for P in pts}


def _minimal_period(phi: RationalMap, P: ProjPointQ, n: int) -> int:
    Q = P
    for m in range(1, n + 1):
        Q = evaluate(phi, Q)
        if Q == P:
            return m
    return 0


def periodic_points(phi: RationalMap, n_max: int, max_degree: int = 2048) -> PeriodicPoints:
    """Rational points of minimal period n for every n <= n_max.

    Periods whose iterate has degree above ``max_degree`` are skipped and the
    result is marked incomplete.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    out = PeriodicPoints({})
    it = phi
    for n in range(1, n_max + 1):
        if n > 1:
            if it.degree * phi.degree > max_degree:
                out.complete = False
                out.skipped_periods.extend(range(n, n_max + 1))
                break
            it = compose(phi, it)
        roots = rational_roots(fixed_point_form(it))
        out.by_period[n] = sorted(P for P in roots if _minimal_period(phi, P, n) == n)
    return out


def preimages(phi: RationalMap, Q: ProjPointQ) -> list[ProjPointQ]:
    """Rational preimages of Q: roots of v F - u G."""
    form = phi.F.scale(Q.y) - phi.G.scale(Q.x)
    return rational_roots(form)


@dataclass
class PreperiodicPoints:
    points: set[ProjPointQ]
    periodic: set[ProjPointQ]
    complete: bool
    depth_reached: int


def preperiodic_points(phi: RationalMap, n_max: int = 3, depth_max: int = 10) -> PreperiodicPoints:
    """Backward-orbit closure of the rational periodic points of period <= n_max.

    ``complete`` is True when the closure stabilized before ``depth_max`` and
    every period up to ``n_max`` was searched; it certifies nothing about
    periods beyond ``n_max``.
    """
    per = periodic_points(phi, n_max)
    periodic = per.all_points()
    found = set(periodic)
    frontier = set(periodic)
    depth = 0
    while frontier and depth < depth_max:
        depth += 1
        new = set()
        for Q in frontier:
            for P in preimages(phi, Q):
                if P not in found:
                    new.add(P)
        found |= new
        frontier = new
    return PreperiodicPoints(found, periodic, per.complete and not frontier, depth)


def lattes_map(p, q) -> RationalMap:
    """x-coordinate duplication map of y^2 = x^3 + p x + q."""
    p, q = Fraction(p), Fraction(q)
    if 4 * p**3 + 27 * q**2 == 0:
        raise ValueError("singular curve: 4p^3 + 27q^2 = 0")
    # F = x^3 + p x + q, F' = 3x^2 + p; numerator F'^2 - 8 x F, denominator 4F
    num = [p * p, 0, 6 * p, 0, 9]
    fx = [q, p, 0, 1]
    eight_x_f = [0] + [8 * c for c in fx]
    num = [a - b for a, b in zip(num, eight_x_f)]
    den = [4 * c for c in fx]
    return map_from_charts(num, den)


def curve_discriminant(p, q) -> Fraction:
    return -16 * (4 * Fraction(p) ** 3 + 27 * Fraction(q) ** 2)


# ---------------------------------------------------------------------------
# Uniform bounds (log scale where the values are astronomically large)
# ---------------------------------------------------------------------------


def _ms_value(t: int, D: int, prec: int = 200):
    with mpmath.workprec(prec):
        base = 12 * (t + 1) * mpmath.log(5 * (t + 1))
        return base ** (4 * D)


def ms_bound(t: int, D: int) -> int:
    """Ceiling of [12 (t+1) log(5 (t+1))]^(4D), the period bound for t bad places."""
    if t < 1 or D < 1:
        raise ValueError("t and D must be positive")
    with mpmath.workprec(200):
        return int(mpmath.ceil(_ms_value(t, D)))


def canci_log_bound(t: int):
    """Natural log of [e^(10^12) (t+1)^8 (log(5(t+1)))^8]^t."""
    if t < 1:
        raise ValueError("t must be positive")
    with mpmath.workprec(200):
        return t * (mpmath.mpf(10) ** 12 + 8 * mpmath.log(t + 1) + 8 * mpmath.log(mpmath.log(5 * (t + 1))))


@dataclass(frozen=True)
class BoundSpec:
    t: int
    D: int
    d: int

    def __post_init__(self):
        if self.t < 1 or self.D < 1 or self.d < 2:
            raise ValueError("need t >= 1, D >= 1, d >= 2")

    def enlarged_t(self) -> int:
        # at most D places above each prime p <= d
        return self.t + self.D * len(primes_up_to(self.d))


def corollary_log_C(params: BoundSpec):
    """ln of (b! + 1) d^c c with b the period bound and c the orbit bound on the enlarged place set.

    Returned as an mpmath number; c itself is exp of roughly 10^12, so the
    result is far outside double range.
    """
    t2 = params.enlarged_t()
    b = ms_bound(t2, params.D)
    with mpmath.workprec(200):
        log_c = canci_log_bound(t2)
        c = mpmath.exp(log_c)
        log_b_fact = mpmath.loggamma(b + 1)
        return log_b_fact + c * mpmath.log(params.d) + log_c


def corollary_terms(params: BoundSpec) -> dict:
    t2 = params.enlarged_t()
    b = ms_bound(t2, params.D)
    with mpmath.workprec(200):
        log_c = canci_log_bound(t2)
        return {
            "enlarged_t": t2,
            "b": b,
            "ln_b_factorial": mpmath.loggamma(b + 1),
            "c_ln_d": mpmath.exp(log_c) * mpmath.log(params.d),
            "ln_c": log_c,
        }
