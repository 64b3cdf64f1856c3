#!/usr/bin/env python3
"""Pooled success-rate statistics for the randomized subroutines.

The fan-priming step succeeds with probability >= 1/4 per iteration and the
bipartite extension loop with probability >= 1/2; this script pools the
iteration counters over a corpus and reports empirical rates with a 3-sigma
band under the binomial model.

Usage:
    python3 scripts/success_rates.py --runs 40
"""

import argparse
import math

from edgecolor.bipartite import bipartite_delta_color
from edgecolor.driver import color_delta_plus_one
from edgecolor.graphs import generate
from edgecolor.rng import stream


def pooled(counters, it_key, ok_key, bound):
    its = counters.get(it_key, 0)
    oks = counters.get(ok_key, 0)
    rate = oks / its if its else float("nan")
    sigma = math.sqrt(bound * (1 - bound) / its) if its else float("nan")
    verdict = "ok" if its and rate >= bound - 3 * sigma else "LOW"
    print(f"{it_key}: {oks}/{its} = {rate:.4f} "
          f"(bound {bound}, 3-sigma floor {bound - 3 * sigma:.4f}) {verdict}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--runs", type=int, default=40)
    args = ap.parse_args()
    totals = {}
    for seed in range(args.runs):
        r = stream(seed, "corpus")
        n = r.randrange(300, 1500)
        m = min(n * (n - 1) // 2, r.randrange(4 * n, 12 * n))
        g = generate("gnm", {"n": n, "m": m}, seed=seed)
        stats = {}
        color_delta_plus_one(g, seed=seed, stats=stats)
        for k, v in stats.items():
            if isinstance(v, int):
                totals[k] = totals.get(k, 0) + v
        a = r.randrange(20, 60)
        gb = generate("complete_bipartite", {"a": a, "b": a}, seed=seed)
        stats = {}
        bipartite_delta_color(gb, seed=seed, stats=stats)
        for k, v in stats.items():
            if isinstance(v, int):
                totals[k] = totals.get(k, 0) + v
    pooled(totals, "prime_iterations", "prime_successes", 0.25)
    pooled(totals, "bip_iterations", "bip_successes", 0.5)


if __name__ == "__main__":
    main()
