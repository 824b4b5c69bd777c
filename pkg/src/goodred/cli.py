"""Command-line interface: ``goodred <command> ...`` printing JSON reports.

Exit codes: 0 success, 1 a violated implication or internal inconsistency,
2 unparsable input or invalid arguments, 3 a search or factorization budget
ran out before the answer was certified.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import os
import sys
from fractions import Fraction

import mpmath

from . import __version__
from .corpus import CorpusConfig, run_corpus
from .dynamics import (
    BoundSpec,
    canci_log_bound,
    corollary_terms,
    curve_discriminant,
    lattes_map,
    ms_bound,
    orbit,
    periodic_points,
    preperiodic_points,
)
from .factor import BUDGET_ENV, is_probable_prime, primes_up_to
from .maps import MapError, ProjPointQ, iterate_map
from .parse import ParseError, parse_map
from .reduction import (
    InternalInconsistency,
    cgr_bad_primes,
    cgr_test,
    inseparable_primes,
    sgr_bad_primes,
    sgr_test,
    theorem1_verify,
)

SCHEMA = "goodred-report/1"

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

CORPUS_FACTOR_BUDGET = 20000


class UsageError(ValueError):
    pass


def exact(value):
    """Recursively turn ints, Fractions and points into decimal strings; bools and None stay."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, Fraction, ProjPointQ)):
        return str(value)
    if isinstance(value, mpmath.mpf):
        return mpmath.nstr(value, 40)
    if isinstance(value, dict):
        return {str(k): exact(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [exact(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def document(command: str, inputs: dict, result: dict, complete: bool = True) -> dict:
    return {
        "schema": SCHEMA,
        "tool": {"name": "goodred", "version": __version__},
        "command": command,
        "input": exact(inputs),
        "result": exact(result),
        "complete": complete,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    }


def _env_budget(default: int | None) -> int | None:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 0:
        raise UsageError(f"{BUDGET_ENV} must be non-negative")
    return value


def _load_map(args):
    phi = parse_map(args.map)
    if args.iterate < 1:
        raise UsageError("--iterate must be at least 1")
    if args.iterate > 1:
        phi = iterate_map(phi, args.iterate)
    return phi


def _need_degree2(phi):
    if phi.degree < 2:
        raise UsageError("the map must have degree at least 2")


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if p < 2 or not is_probable_prime(p):
        raise argparse.ArgumentTypeError(f"not a prime: {p}")
    return p


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {n}")
    return n


def _nonnegative(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {n}")
    return n


# ---------------------------------------------------------------------------
# Commands; each returns (document, exit code)
# ---------------------------------------------------------------------------


def cmd_analyze(args):
    phi = _load_map(args)
    _need_degree2(phi)
    reports = [theorem1_verify(phi, p, not args.skip_separability_guard) for p in args.prime]
    code = EXIT_OK if all(r.consistent for r in reports) else EXIT_VIOLATION
    result = {"map": str(phi), "degree": phi.degree, "reports": [r.to_dict() for r in reports]}
    return document("analyze", {"map": args.map, "iterate": args.iterate, "primes": args.prime}, result), code


def cmd_bad_primes(args):
    phi = _load_map(args)
    _need_degree2(phi)
    budget = _env_budget(None)
    sgr = sgr_bad_primes(phi, budget)
    cgr = cgr_bad_primes(phi, budget)
    insep = inseparable_primes(phi, budget)
    complete = sgr.complete and cgr.complete and insep.complete
    unfactored = sorted(set(sgr.unfactored + cgr.unfactored + insep.unfactored))
    result = {
        "map": str(phi),
        "degree": phi.degree,
        "sgr_bad": list(sgr.primes),
        "cgr_bad": list(cgr.primes),
        "inseparable": list(insep.primes),
        "unfactored": unfactored,
    }
    doc = document("bad-primes", {"map": args.map, "iterate": args.iterate}, result, complete)
    return doc, EXIT_OK if complete else EXIT_BUDGET


def cmd_verify_theorem(args):
    if args.deg_min > args.deg_max:
        raise UsageError("--deg-min exceeds --deg-max")
    if args.deg_min < 2:
        raise UsageError("--deg-min must be at least 2")
    config = CorpusConfig(
        count=args.count,
        seed=args.seed,
        deg_min=args.deg_min,
        deg_max=args.deg_max,
        coeff_bound=args.coeff_bound,
        prime_bound=args.prime_bound,
        factor_budget=_env_budget(CORPUS_FACTOR_BUDGET),
        workers=args.workers,
        separability_guard=not args.skip_separability_guard,
    )
    summary = run_corpus(config)
    result = summary.to_dict()
    result.pop("config")
    result["violations"] = summary.theorem1_violations
    if args.records:
        result["records"] = summary.records
    inputs = {
        "count": args.count, "seed": args.seed, "deg_min": args.deg_min, "deg_max": args.deg_max,
        "coeff_bound": args.coeff_bound, "prime_bound": args.prime_bound,
        "factor_budget": config.factor_budget,
        "skip_separability_guard": args.skip_separability_guard,
    }
    doc = document("verify-theorem", inputs, result, summary.incomplete_factorizations == 0)
    return doc, EXIT_OK if summary.ok else EXIT_VIOLATION


def cmd_orbit(args):
    phi = _load_map(args)
    P = ProjPointQ.of(args.point)
    res = orbit(phi, P, max_steps=args.max_steps, max_bits=args.max_bits)
    result = {
        "map": str(phi),
        "points": list(res.points),
        "tail_length": res.tail_length,
        "cycle_length": res.cycle_length,
        "cycle": list(res.cycle),
        "budget_exceeded": res.budget_exceeded,
    }
    inputs = {"map": args.map, "iterate": args.iterate, "point": args.point,
              "max_steps": args.max_steps, "max_bits": args.max_bits}
    doc = document("orbit", inputs, result, not res.budget_exceeded)
    return doc, EXIT_BUDGET if res.budget_exceeded else EXIT_OK


def cmd_preper(args):
    phi = _load_map(args)
    _need_degree2(phi)
    res = preperiodic_points(phi, n_max=args.n_max, depth_max=args.depth_max)
    result = {
        "map": str(phi),
        "points": sorted(res.points, key=_point_key),
        "periodic": sorted(res.periodic, key=_point_key),
        "depth_reached": res.depth_reached,
        "periods_searched": args.n_max,
    }
    inputs = {"map": args.map, "iterate": args.iterate, "n_max": args.n_max, "depth_max": args.depth_max}
    doc = document("preper", inputs, result, res.complete)
    return doc, EXIT_OK if res.complete else EXIT_BUDGET


def cmd_periodic(args):
    phi = _load_map(args)
    _need_degree2(phi)
    res = periodic_points(phi, args.n_max, max_degree=args.max_degree)
    result = {
        "map": str(phi),
        "by_period": {str(n): sorted(pts, key=_point_key) for n, pts in res.by_period.items()},
        "skipped_periods": res.skipped_periods,
    }
    inputs = {"map": args.map, "iterate": args.iterate, "n_max": args.n_max, "max_degree": args.max_degree}
    doc = document("periodic", inputs, result, res.complete)
    return doc, EXIT_OK if res.complete else EXIT_BUDGET


def cmd_lattes(args):
    try:
        a, b = Fraction(args.p), Fraction(args.q)
    except (ValueError, ZeroDivisionError):
        raise UsageError("curve coefficients must be rationals") from None
    phi = lattes_map(a, b)
    disc = curve_discriminant(a, b)
    result = {"map": str(phi), "F": str(phi.F), "G": str(phi.G), "discriminant": disc}
    code = EXIT_OK
    if args.check_primes:
        bad_for = disc.numerator * disc.denominator * a.denominator * b.denominator
        checked, failures = [], []
        for p in primes_up_to(args.check_primes):
            if p == 2 or bad_for % p == 0:
                continue
            checked.append(p)
            if not (sgr_test(phi, p) and cgr_test(phi, p).cgr):
                failures.append(p)
        result["checked_primes"] = checked
        result["good_reduction_failures"] = failures
        code = EXIT_VIOLATION if failures else EXIT_OK
    inputs = {"p": args.p, "q": args.q, "check_primes": args.check_primes}
    return document("lattes", inputs, result), code


def cmd_bounds(args):
    result = {
        "ms_bound": ms_bound(args.t, args.D),
        "canci_bound": {"scale": "natural log", "value": canci_log_bound(args.t)},
    }
    if args.d is not None:
        terms = corollary_terms(BoundSpec(args.t, args.D, args.d))
        result["corollary"] = {
            "scale": "natural log",
            "enlarged_t": terms["enlarged_t"],
            "period_bound": terms["b"],
            "ln_period_bound_factorial": terms["ln_b_factorial"],
            "c_ln_d": terms["c_ln_d"],
            "ln_c": terms["ln_c"],
            "ln_C": terms["ln_b_factorial"] + terms["c_ln_d"] + terms["ln_c"],
        }
    return document("bounds", {"t": args.t, "D": args.D, "d": args.d}, result), EXIT_OK


def _point_key(P: ProjPointQ):
    return (P.y == 0, P.to_fraction() if P.y else 0)


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="goodred",
        description="Good reduction of rational maps of the projective line over Q.",
        epilog=f"{BUDGET_ENV} caps the Pollard rho steps spent per integer.",
    )
    parser.add_argument("--version", action="version", version=f"goodred {__version__}")
    parser.add_argument("--output", "-o", help="write the JSON report to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_map(p):
        p.add_argument("map", help='map expression in x, e.g. "(x^2+x)/(x+2)" or "num=[1,0];den=[1]"')
        p.add_argument("--iterate", type=int, default=1, metavar="K", help="analyze the K-th iterate")
        return p

    p = with_map(sub.add_parser("analyze", help="all verdicts at the given primes"))
    p.add_argument("--prime", "-p", type=_prime, action="append", required=True,
                   help="prime to test (repeatable)")
    p.add_argument("--skip-separability-guard", action="store_true",
                   help="demand the equivalence even for inseparable reductions (fault injection)")
    p.set_defaults(func=cmd_analyze)

    p = with_map(sub.add_parser("bad-primes", help="primes of bad S.G.R., bad C.G.R. and inseparable reduction"))
    p.set_defaults(func=cmd_bad_primes)

    p = sub.add_parser("verify-theorem", help="check the good-reduction equivalence on a random corpus")
    p.add_argument("--count", type=_nonnegative, default=500)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--deg-min", type=int, default=2)
    p.add_argument("--deg-max", type=int, default=5)
    p.add_argument("--coeff-bound", type=_positive, default=20)
    p.add_argument("--prime-bound", type=_positive, default=50)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--records", action="store_true", help="include per-map records in the report")
    p.add_argument("--skip-separability-guard", action="store_true",
                   help="count inseparable reductions as violations too (fault injection)")
    p.set_defaults(func=cmd_verify_theorem)

    p = with_map(sub.add_parser("orbit", help="forward orbit of a rational point"))
    p.add_argument("point", help='starting point: integer, fraction like -1/4, or "inf"')
    p.add_argument("--max-steps", type=_positive, default=1000)
    p.add_argument("--max-bits", type=_positive, default=4096)
    p.set_defaults(func=cmd_orbit)

    p = with_map(sub.add_parser("preper", help="rational preperiodic points from periods up to --n-max"))
    p.add_argument("--n-max", type=_positive, default=3)
    p.add_argument("--depth-max", type=_positive, default=10)
    p.set_defaults(func=cmd_preper)

    p = with_map(sub.add_parser("periodic", help="rational periodic points by minimal period"))
    p.add_argument("--n-max", type=_positive, default=3)
    p.add_argument("--max-degree", type=_positive, default=2048)
    p.set_defaults(func=cmd_periodic)

    p = sub.add_parser("lattes", help="Lattès duplication map of y^2 = x^3 + p x + q")
    p.add_argument("p")
    p.add_argument("q")
    p.add_argument("--check-primes", type=_nonnegative, default=0, metavar="N",
                   help="test S.G.R. and C.G.R. at odd primes <= N of good reduction for the curve")
    p.set_defaults(func=cmd_lattes)

    p = sub.add_parser("bounds", help="uniform period and orbit bounds (log scale where huge)")
    p.add_argument("--t", type=_positive, required=True, help="number of bad places")
    p.add_argument("--D", type=_positive, required=True, help="degree of the number field")
    p.add_argument("--d", type=int, default=None, help="map degree, for the preperiodic-count bound")
    p.set_defaults(func=cmd_bounds)
    return parser


def _emit(doc: dict, output: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _error(command: str, message: str, code: int, output: str | None) -> int:
    doc = {
        "schema": SCHEMA,
        "tool": {"name": "goodred", "version": __version__},
        "command": command,
        "error": message,
        "exit_code": code,
    }
    _emit(doc, output)
    print(f"goodred: {message}", file=sys.stderr)
    return code


def _protect_expressions(argv: list[str]) -> list[str]:
    """Keep argparse from reading a map like "-3*x^4+4*x^3" as an option."""
    out = []
    for tok in argv:
        if tok.startswith("-") and not tok.startswith("--") and any(ch in tok for ch in "x*^()/+["):
            tok = " " + tok
        out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_protect_expressions(argv))
    try:
        doc, code = args.func(args)
    except (ParseError, MapError, UsageError, ValueError) as exc:
        return _error(args.command, str(exc), EXIT_INPUT, args.output)
    except InternalInconsistency as exc:
        return _error(args.command, f"internal inconsistency: {exc}", EXIT_VIOLATION, args.output)
    doc["exit_code"] = code
    _emit(doc, args.output)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
