"""Command-line front-end: color / validate / gen / bench.

Exit codes: 0 success (cmd_color additionally self-validates its output),
1 runtime or validation failure, 2 usage errors (argparse).
"""

from __future__ import annotations

import argparse
import csv
import multiprocessing
import sys
import time

from . import debug
from .bipartite import bipartite_delta_color
from .driver import color_delta_plus_one, color_delta_plus_mu
from .graphs import Graph, generate, parse_graph, serialize_graph, sniff_format
from .report import RunReport, serialize_coloring, validate
from .shannon import shannon_color
from .vizing import classic_vizing, classic_vizing_multi, greedy_2delta

ALGOS = ("nearlinear", "classic", "greedy", "bipartite", "multigraph",
         "shannon")

BENCH_CSV_HEADER = ["algo", "kind", "n", "m", "delta", "seed", "rep",
                    "seconds", "colors_used", "uncolored", "timed_out"]


def run_algorithm(algo: str, g: Graph, seed: int, stats=None):
    if algo == "nearlinear":
        return color_delta_plus_one(g, seed=seed, stats=stats)
    if algo == "classic":
        return classic_vizing(g) if g.is_simple() else classic_vizing_multi(g)
    if algo == "greedy":
        return greedy_2delta(g)
    if algo == "bipartite":
        return bipartite_delta_color(g, seed=seed, stats=stats)
    if algo == "multigraph":
        return color_delta_plus_mu(g, seed=seed, stats=stats)
    if algo == "shannon":
        return shannon_color(g, seed=seed, stats=stats)
    raise ValueError(f"unknown algorithm {algo!r}")


def _read_graph(path: str) -> Graph:
    with open(path) as fh:
        text = fh.read()
    return parse_graph(text, sniff_format(text))


def cmd_color(args) -> int:
    g = _read_graph(args.input)
    if args.debug_invariants:
        debug.enable()
    stats = {}
    t0 = time.monotonic_ns()
    try:
        chi = run_algorithm(args.algo, g, args.seed, stats=stats)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    elapsed = time.monotonic_ns() - t0
    text = serialize_coloring(g, chi)
    report = RunReport.from_run(args.algo, g, chi, args.seed, elapsed, stats)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(report.to_json())
    else:
        sys.stdout.write(text)
        print(report.to_json(), file=sys.stderr)
    verdict = validate(g, text)
    if not verdict.ok:
        print(f"error: output failed validation: {verdict.violations[:10]}",
              file=sys.stderr)
        return 1
    return 0


def cmd_validate(args) -> int:
    g = _read_graph(args.graph)
    with open(args.coloring) as fh:
        text = fh.read()
    try:
        verdict = validate(g, text)
    except ValueError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return 1
    print(f"proper={verdict.proper} complete={verdict.complete} "
          f"colors_used={verdict.colors_used} "
          f"palette_bound_ok={verdict.palette_bound_ok}")
    for v in verdict.violations:
        print(f"violation: {v}")
    return 0 if verdict.ok else 1


def cmd_gen(args) -> int:
    params = {}
    for item in args.param:
        key, _, val = item.partition("=")
        if not _:
            print(f"error: bad --param {item!r}, expected key=value",
                  file=sys.stderr)
            return 2
        params[key] = int(val)
    try:
        g = generate(args.kind, params, seed=args.seed)
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = serialize_graph(g)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _bench_cell(algo, kind, params, gseed, seed, out):
    g = generate(kind, params, seed=gseed)
    t0 = time.monotonic()
    chi = run_algorithm(algo, g, seed)
    out.put((time.monotonic() - t0, chi.colors_used(), len(chi.uncolored)))


def cmd_bench(args) -> int:
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ALGOS:
            print(f"error: unknown algorithm {a!r}", file=sys.stderr)
            return 2
    sizes = [int(s) for s in args.sizes.split(",")]
    seeds = [int(s) for s in args.seeds.split(",")]
    rows = []
    kind = "random_regular"
    for m in sizes:
        n = max(args.delta + 1, (2 * m) // args.delta)
        if n * args.delta % 2:
            n += 1
        params = {"n": n, "d": args.delta}
        for algo in algos:
            for seed in seeds:
                for rep in range(args.reps):
                    row = _timed_cell(algo, kind, params, seed, rep,
                                      args.budget)
                    rows.append(row)
                    print(",".join(str(x) for x in row), file=sys.stderr)
    with open(args.csv, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(BENCH_CSV_HEADER)
        w.writerows(rows)
    return 0


def _timed_cell(algo, kind, params, seed, rep, budget):
    n = params["n"]
    m = n * params["d"] // 2
    ctx = multiprocessing.get_context("fork")
    out = ctx.Queue()
    proc = ctx.Process(target=_bench_cell,
                       args=(algo, kind, params, seed, seed, out))
    proc.start()
    proc.join(timeout=budget)
    if proc.is_alive():
        proc.terminate()
        proc.join()
        return [algo, kind, n, m, params["d"], seed, rep,
                f"{float(budget):.6f}", -1, -1, 1]
    seconds, colors_used, uncolored = out.get()
    return [algo, kind, n, m, params["d"], seed, rep, f"{seconds:.6f}",
            colors_used, uncolored, 0]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="edgecolor",
                                description="randomized edge coloring engine")
    sub = p.add_subparsers(dest="cmd", required=True)

    pc = sub.add_parser("color", help="color a graph file")
    pc.add_argument("--algo", choices=ALGOS, default="nearlinear")
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--debug-invariants", action="store_true",
                    help="run the O(m) invariant audits (EDGECOLOR_DEBUG=1)")
    pc.add_argument("--out", help="coloring output file (default stdout)")
    pc.add_argument("input", help="graph file (edge list or DIMACS)")
    pc.set_defaults(func=cmd_color)

    pv = sub.add_parser("validate", help="check a coloring file against a graph")
    pv.add_argument("graph")
    pv.add_argument("coloring")
    pv.set_defaults(func=cmd_validate)

    pg = sub.add_parser("gen", help="generate a named instance")
    pg.add_argument("--kind", required=True)
    pg.add_argument("--param", action="append", default=[],
                    metavar="KEY=VALUE", help="generator parameter (repeat)")
    pg.add_argument("--seed", type=int, default=0)
    pg.add_argument("--out")
    pg.set_defaults(func=cmd_gen)

    pb = sub.add_parser("bench", help="timing ladder over random regular graphs")
    pb.add_argument("--algos", required=True, help="comma-separated algorithms")
    pb.add_argument("--sizes", required=True, help="comma-separated edge counts")
    pb.add_argument("--delta", type=int, default=64)
    pb.add_argument("--seeds", required=True, help="comma-separated seeds")
    pb.add_argument("--reps", type=int, default=1)
    pb.add_argument("--budget", type=float, default=600.0,
                    help="per-run wall-clock budget in seconds")
    pb.add_argument("--csv", required=True)
    pb.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
