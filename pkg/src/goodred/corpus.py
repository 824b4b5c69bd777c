"""Seeded random corpora and bulk verification of the reduction criteria."""

from __future__ import annotations

import hashlib
import json
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .factor import primes_up_to
from .forms import IntBinaryForm, chart_collision_integers
from .maps import (
    CommonFactor,
    Moebius,
    ProjPointQ,
    RationalMap,
    conjugate,
    map_from_charts,
    new_map,
)
from .reduction import (
    InternalInconsistency,
    _candidate_primes,
    cgr_test,
    map_resultant,
    ramification_data,
    separability_paths,
    sgr_paths,
    theorem1_verify,
)


@dataclass(frozen=True)
class CorpusConfig:
    count: int = 500
    seed: int = 0
    deg_min: int = 2
    deg_max: int = 5
    coeff_bound: int = 20
    prime_bound: int = 50
    factor_budget: int = 20000
    trial_bound: int = 10**5
    workers: int = 1
    separability_guard: bool = True

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("count must be non-negative")
        if not 2 <= self.deg_min <= self.deg_max:
            raise ValueError("need 2 <= deg_min <= deg_max")
        if self.coeff_bound < 1 or self.prime_bound < 2:
            raise ValueError("coeff_bound must be >= 1 and prime_bound >= 2")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


def random_map(rng: random.Random, degree: int, bound: int) -> RationalMap:
    """Uniform coefficients in [-bound, bound], resampled until Res(F, G) != 0."""
    while True:
        F = IntBinaryForm(tuple(rng.randint(-bound, bound) for _ in range(degree + 1)))
        G = IntBinaryForm(tuple(rng.randint(-bound, bound) for _ in range(degree + 1)))
        try:
            return new_map(F, G)
        except CommonFactor:
            continue


def sample_maps(config: CorpusConfig) -> list[RationalMap]:
    rng = random.Random(config.seed)
    return [random_map(rng, rng.randint(config.deg_min, config.deg_max), config.coeff_bound)
            for _ in range(config.count)]


def relevant_primes(phi: RationalMap, prime_bound: int, budget: int | None = None,
                    trial_bound: int = 10**5) -> tuple[list[int], list[int]]:
    """Primes up to the bound together with the prime divisors of every integer
    whose divisibility can change a verdict: Res(F, G), the chart collision
    integers of radW and radB, the Wronskian content and Res(radW, S).

    Returns the sorted primes and the cofactors left unfactored.
    """
    data = ramification_data(phi)
    integers = [map_resultant(phi), data.W_raw.content, data.res_radW_S]
    integers += chart_collision_integers(data.radW) + chart_collision_integers(data.radB)
    cands, unf = _candidate_primes(integers, extra=primes_up_to(prime_bound),
                                   budget=budget, trial_bound=trial_bound)
    return sorted(cands), unf


def verify_map(phi: RationalMap, primes, separability_guard: bool = True) -> dict:
    """Every per-prime check for one map, as a plain dict."""
    data = ramification_data(phi)
    record = {
        "map": str(phi),
        "degree": phi.degree,
        "riemann_hurwitz": data.riemann_hurwitz_sum() == 2 * phi.degree - 2,
        "primes": list(primes),
        "two_path_disagreements": [],
        "inconsistencies": [],
        "reports": [],
    }
    for p in primes:
        s1, s2 = sgr_paths(phi, p)
        e1, e2 = separability_paths(phi, p)
        if s1 != s2:
            record["two_path_disagreements"].append({"p": p, "check": "sgr"})
        if e1 != e2:
            record["two_path_disagreements"].append({"p": p, "check": "separability"})
        try:
            report = theorem1_verify(phi, p, separability_guard)
        except InternalInconsistency as exc:
            record["inconsistencies"].append({"p": p, "error": str(exc)})
            continue
        record["reports"].append(report.to_dict())
    return record


def _corpus_task(args) -> dict:
    phi, config = args
    primes, unf = relevant_primes(phi, config.prime_bound, config.factor_budget, config.trial_bound)
    record = verify_map(phi, primes, config.separability_guard)
    record["unfactored"] = [str(n) for n in unf]
    return record


@dataclass
class CorpusSummary:
    config: CorpusConfig
    records: list[dict] = field(repr=False)
    maps: int = 0
    pairs: int = 0
    theorem1_violations: int = 0
    lemma7_violations: int = 0
    large_prime_violations: int = 0
    two_path_disagreements: int = 0
    inconsistencies: int = 0
    riemann_hurwitz_violations: int = 0
    incomplete_factorizations: int = 0
    verdicts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not (self.theorem1_violations or self.lemma7_violations or self.large_prime_violations
                    or self.two_path_disagreements or self.inconsistencies
                    or self.riemann_hurwitz_violations)

    def digest(self) -> str:
        """SHA-256 of the canonical JSON of all per-map records."""
        blob = json.dumps(self.records, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def to_dict(self) -> dict:
        out = {k: v for k, v in asdict(self).items() if k not in ("records", "config")}
        out["config"] = asdict(self.config)
        out["digest"] = self.digest()
        out["ok"] = self.ok
        return out


def summarize(config: CorpusConfig, records: list[dict]) -> CorpusSummary:
    out = CorpusSummary(config, records, maps=len(records))
    verdicts = Counter()
    for rec in records:
        out.riemann_hurwitz_violations += not rec["riemann_hurwitz"]
        out.two_path_disagreements += len(rec["two_path_disagreements"])
        out.inconsistencies += len(rec["inconsistencies"])
        out.incomplete_factorizations += bool(rec.get("unfactored"))
        for rep in rec["reports"]:
            out.pairs += 1
            out.theorem1_violations += not rep["theorem1_consistent"]
            out.lemma7_violations += not rep["lemma7_consistent"]
            out.large_prime_violations += rep["large_prime_consistent"] is False
            key = "sgr={} cgr={} sep={}".format(*(int(rep[k]) for k in ("sgr", "cgr", "separable")))
            verdicts[key] += 1
    out.verdicts = dict(sorted(verdicts.items()))
    return out


def run_corpus(config: CorpusConfig, maps: list[RationalMap] | None = None) -> CorpusSummary:
    """Verify every map of the corpus; results are independent of the worker count."""
    if maps is None:
        maps = sample_maps(config)
    tasks = [(phi, config) for phi in maps]
    if config.workers == 1:
        records = [_corpus_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(_corpus_task, tasks, chunksize=8))
    return summarize(config, records)


# ---------------------------------------------------------------------------
# Maps with prescribed rational critical points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrescribedMap:
    """A map together with its ramification and branch points, known by construction."""

    phi: RationalMap
    ramification_points: tuple[ProjPointQ, ...]
    branch_points: tuple[ProjPointQ, ...]


def _moebius_point(m: Moebius, P: ProjPointQ) -> ProjPointQ:
    return ProjPointQ(m.a * P.x + m.b * P.y, m.c * P.x + m.d * P.y)


def _random_moebius(rng: random.Random, bound: int) -> Moebius:
    while True:
        m = Moebius(*(rng.randint(-bound, bound) for _ in range(4)))
        if m.det:
            return m


def prescribed_critical_map(rng: random.Random, max_degree: int = 5, point_height: int = 6,
                            moebius_bound: int = 3) -> PrescribedMap:
    """alpha o f o beta for a polynomial f with f' = c prod (x - r_j)^(m_j).

    The ramification points are beta^-1(r_j) and beta^-1(inf); the branch
    points are alpha(f(r_j)) and alpha(inf). All of them are rational.
    """
    total = rng.randint(1, max_degree - 1)
    roots: list[Fraction] = []
    mults: list[int] = []
    while sum(mults) < total:
        r = Fraction(rng.randint(-point_height, point_height), rng.randint(1, point_height))
        if r in roots:
            continue
        roots.append(r)
        mults.append(rng.randint(1, total - sum(mults)))
    deriv = [Fraction(1)]
    for r, m in zip(roots, mults):
        for _ in range(m):
            deriv = [Fraction(0)] + deriv
            for k in range(len(deriv) - 1):
                deriv[k] -= r * deriv[k + 1]
    poly = [Fraction(rng.randint(-point_height, point_height))] + [c / (k + 1) for k, c in enumerate(deriv)]
    f = map_from_charts(poly, [1])

    def f_at(x: Fraction) -> Fraction:
        return sum(c * x**k for k, c in enumerate(poly))

    alpha = _random_moebius(rng, moebius_bound)
    beta = _random_moebius(rng, moebius_bound)
    phi = conjugate(alpha, f, beta)
    beta_inv = beta.inverse()
    ram = [ProjPointQ(r.numerator, r.denominator) for r in roots] + [ProjPointQ.infinity()]
    branch = {ProjPointQ.of(f_at(r)) for r in roots} | {ProjPointQ.infinity()}
    return PrescribedMap(
        phi=phi,
        ramification_points=tuple(sorted({_moebius_point(beta_inv, P) for P in ram})),
        branch_points=tuple(sorted({_moebius_point(alpha, P) for P in branch})),
    )


def _collide(points, p: int) -> bool:
    pts = list(points)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if (pts[i].x * pts[j].y - pts[j].x * pts[i].y) % p == 0:
                return True
    return False


def brute_force_cgr(m: PrescribedMap, p: int) -> bool:
    """C.G.R. by comparing the known ramification and branch points pairwise mod p."""
    return not _collide(m.ramification_points, p) and not _collide(m.branch_points, p)


def oracle_corpus(count: int = 200, seed: int = 1, prime_bound: int = 50) -> dict:
    """Compare cgr_test with the pairwise oracle on every prime up to the bound."""
    rng = random.Random(seed)
    primes = primes_up_to(prime_bound)
    maps = [prescribed_critical_map(rng) for _ in range(count)]
    disagreements = []
    records = []
    for k, m in enumerate(maps):
        rec = verify_map(m.phi, primes)
        records.append(rec)
        for p in primes:
            if cgr_test(m.phi, p).cgr != brute_force_cgr(m, p):
                disagreements.append({"index": k, "map": str(m.phi), "p": p})
    return {"maps": maps, "records": records, "disagreements": disagreements,
            "summary": summarize(CorpusConfig(count=count, seed=seed, prime_bound=prime_bound), records)}

