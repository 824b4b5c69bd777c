#!/usr/bin/env python3
"""Verify the good-reduction equivalence on a seeded random corpus and print a JSON summary."""

from __future__ import annotations

import argparse
import json
import sys
import time

from goodred.corpus import CorpusConfig, run_corpus


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--deg-min", type=int, default=2)
    ap.add_argument("--deg-max", type=int, default=5)
    ap.add_argument("--coeff-bound", type=int, default=20)
    ap.add_argument("--prime-bound", type=int, default=50)
    ap.add_argument("--factor-budget", type=int, default=20000)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--records", help="also write the per-map records to this file")
    args = ap.parse_args()

    config = CorpusConfig(count=args.count, seed=args.seed, deg_min=args.deg_min, deg_max=args.deg_max,
                          coeff_bound=args.coeff_bound, prime_bound=args.prime_bound,
                          factor_budget=args.factor_budget, workers=args.workers)
    start = time.perf_counter()
    summary = run_corpus(config)
    out = summary.to_dict()
    out["seconds"] = round(time.perf_counter() - start, 1)
    print(json.dumps(out, indent=2, sort_keys=True))
    if args.records:
        with open(args.records, "w", encoding="utf-8") as fh:
            json.dump(summary.records, fh, indent=1, sort_keys=True)
    return 0 if summary.ok else 1


if __name__ == "__main__":
    sys.exit(main())
