#!/usr/bin/env python3
"""Doubling ladder for the near-linear driver.

Times `nearlinear` (and optionally the classic per-edge baseline) on random
d-regular graphs over a doubling edge ladder, reports median-of-k wall times
and consecutive doubling ratios T(2m)/T(m). A near-linear implementation
keeps the ratio close to 2; the classic baseline drifts toward 4+.

Usage:
    python3 scripts/scaling_ladder.py --sizes 65536,131072,262144 --reps 5
"""

import argparse
import statistics
import sys
import time

from edgecolor.cli import run_algorithm
from edgecolor.graphs import generate


def time_algo(algo, m, delta, seeds, reps):
    n = max(delta + 1, (2 * m) // delta)
    if n * delta % 2:
        n += 1
    times = []
    for seed in seeds:
        g = generate("random_regular", {"n": n, "d": delta}, seed=seed)
        run_algorithm(algo, g, seed)  # warm-up, excluded from timing
        for _ in range(reps):
            t0 = time.monotonic()
            chi = run_algorithm(algo, g, seed)
            times.append(time.monotonic() - t0)
            assert not chi.uncolored
    return statistics.median(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="65536,131072,262144,524288,1048576")
    ap.add_argument("--delta", type=int, default=64)
    ap.add_argument("--seeds", default="1")
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--algos", default="nearlinear")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    seeds = [int(s) for s in args.seeds.split(",")]
    for algo in args.algos.split(","):
        prev = None
        print(f"# {algo}, delta={args.delta}, median of {args.reps} reps")
        print("m,median_seconds,ratio")
        for m in sizes:
            t = time_algo(algo, m, args.delta, seeds, args.reps)
            ratio = "" if prev is None else f"{t / prev:.3f}"
            print(f"{m},{t:.4f},{ratio}")
            sys.stdout.flush()
            prev = t


if __name__ == "__main__":
    main()
