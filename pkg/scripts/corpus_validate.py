#!/usr/bin/env python3
"""Run every driver over a generated corpus with full invariant audits.

Each run is validated independently of the coloring data structures (file
round-trip through the validator) and checked against its palette bound.

Usage:
    python3 scripts/corpus_validate.py --seeds 0,1,2 --debug
"""

import argparse
import sys

from edgecolor import debug
from edgecolor.cli import run_algorithm
from edgecolor.graphs import generate
from edgecolor.report import serialize_coloring, validate
from edgecolor.shannon import shannon_palette

INSTANCES = [
    ("cycle", {"n": 7}),
    ("cycle", {"n": 101}),
    ("petersen", {}),
    ("complete", {"n": 11}),
    ("grid", {"rows": 20, "cols": 30}),
    ("gnm", {"n": 500, "m": 2500}),
    ("random_regular", {"n": 400, "d": 9}),
    ("complete_bipartite", {"a": 32, "b": 32}),
    ("gnm_multi", {"n": 120, "m": 700}),
    ("shannon_triangle", {"mu": 5}),
]


def palette_bound(algo, g):
    if algo == "nearlinear" or algo == "classic":
        return g.delta + (1 if g.is_simple() else g.mu)
    if algo == "greedy":
        return 2 * g.delta - 1
    if algo == "bipartite":
        return g.delta
    if algo == "multigraph":
        return g.delta + max(1, g.mu)
    if algo == "shannon":
        return shannon_palette(g.delta)
    raise ValueError(algo)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", default="0,1,2")
    ap.add_argument("--debug", action="store_true",
                    help="enable the O(m) invariant audits")
    args = ap.parse_args()
    if args.debug:
        debug.enable()
    failures = 0
    for kind, params in INSTANCES:
        for seed in (int(s) for s in args.seeds.split(",")):
            g = generate(kind, params, seed=seed)
            for algo in ("nearlinear", "classic", "greedy", "bipartite",
                         "multigraph", "shannon"):
                if algo in ("nearlinear", "classic") and not g.is_simple():
                    continue
                if algo == "bipartite" and g.bipartition() is None:
                    continue
                chi = run_algorithm(algo, g, seed)
                verdict = validate(g, serialize_coloring(g, chi))
                ok = (verdict.ok and verdict.complete
                      and verdict.colors_used <= palette_bound(algo, g))
                status = "ok" if ok else "FAIL"
                failures += not ok
                print(f"{status} {algo:<10} {kind}{params} seed={seed} "
                      f"colors={verdict.colors_used}"
                      f"/{palette_bound(algo, g)}")
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
