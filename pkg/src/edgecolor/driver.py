"""Near-linear (Delta+1)-coloring driver, plus the (Delta+mu) multigraph one.

Recursion on Euler partitions: split the edges into two halves whose max
degrees are about Delta/2, color each half recursively, merge the two
palettes, keep the Delta+1 largest color classes, and repair the rest with
waves of `construct_u_fans` + `color_u_fans`, each of which colors a constant
fraction of the remaining holes. A wave costs O(m), holes shrink
geometrically, and the recursion depth is O(log Delta), which is where the
near-linear bound comes from. The last ~100*log2(n) holes at the top level
are finished with the classic per-edge fan step.
"""

from __future__ import annotations

import math
from typing import Optional

from . import debug
from .coloring import PartialColoring
from .construct import construct_u_fans
from .graphs import Graph, euler_partition
from .rng import child_seed, stream
from .ufans import color_u_fans
from .vizing import classic_vizing, classic_vizing_multi, extend_edge

__all__ = ["color_delta_plus_one", "color_delta_plus_mu", "main_extend",
           "merge_halves"]

BASE_EDGES = 256          # below this the classic step is cheaper than waves
STRAGGLERS_PER_LOG_N = 100


def main_extend(chi: PartialColoring, seed: int, lam0: int,
                stats: Optional[dict] = None) -> None:
    """Shrink the uncolored set below lam0 by repeated construct+color waves."""
    wave = 0
    g = chi.g
    while len(chi.uncolored) > lam0:
        before = len(chi.uncolored)
        # cheap greedy pass first: freshly merged colorings leave many holes
        # whose endpoints still share a missing color
        for e in sorted(chi.uncolored):
            c = chi.common_missing(g.src[e], g.dst[e])
            if c:
                chi.set_color(e, c)
        if len(chi.uncolored) <= lam0:
            break
        wstats = {} if stats is not None or debug.enabled() else None
        colored, U = construct_u_fans(chi, stats=wstats)
        for ue in [c for c in U.items if c.kind == "edge"]:
            U.delete(ue)  # leftover u-edges rejoin the plain hole pool
        colored += color_u_fans(chi, U, stream(seed, "wave", wave),
                                stats=wstats)
        for f in list(U.items):
            U.delete(f)  # surviving fans release their reservations
        if stats is not None and wstats:
            _merge_stats(stats, wstats)
        wave += 1
        if len(chi.uncolored) >= before:
            # randomized waves stalled (tiny or adversarial leftovers):
            # the classic step finishes them off deterministically
            if stats is not None:
                stats["stalled_waves"] = stats.get("stalled_waves", 0) + 1
            for e in sorted(chi.uncolored):
                extend_edge(chi, e)
            return
    if stats is not None:
        stats["waves"] = stats.get("waves", 0) + wave


def color_delta_plus_one(g: Graph, seed: int = 0,
                         stats: Optional[dict] = None) -> PartialColoring:
    """Proper (Delta+1)-edge-coloring of a simple graph, near-linear time."""
    if not g.is_simple():
        raise ValueError("color_delta_plus_one expects a simple graph")
    chi = _color_recursive(g, seed, depth=0, stats=stats)
    # finish the last few holes with the O(n)-per-edge classic step
    for e in sorted(chi.uncolored):
        extend_edge(chi, e)
    if debug.enabled():
        chi.check()
        assert not chi.uncolored
    if stats is not None:
        stats["colors_used"] = chi.colors_used()
    return chi


def color_delta_plus_mu(g: Graph, seed: int = 0,
                        stats: Optional[dict] = None) -> PartialColoring:
    """Proper (Delta+mu)-edge-coloring of a loopless multigraph."""
    chi = _color_recursive(g, seed, depth=0, stats=stats)
    for e in sorted(chi.uncolored):
        extend_edge(chi, e)
    if debug.enabled():
        chi.check()
        assert not chi.uncolored
    if stats is not None:
        stats["colors_used"] = chi.colors_used()
    return chi


def _color_recursive(g: Graph, seed: int, depth: int,
                     stats: Optional[dict]) -> PartialColoring:
    if stats is not None:
        stats["max_depth"] = max(stats.get("max_depth", 0), depth)
    if g.delta <= 2 or g.m <= BASE_EDGES:
        return classic_vizing(g) if g.is_simple() else classic_vizing_multi(g)
    g0, g1 = euler_partition(g)
    chi0 = _color_recursive(g0, child_seed(seed, "part", depth, 0), depth + 1,
                            stats)
    chi1 = _color_recursive(g1, child_seed(seed, "part", depth, 1), depth + 1,
                            stats)
    chi = merge_halves(g, (g0, chi0), (g1, chi1), g.delta + max(1, g.mu))
    if depth == 0:
        lam0 = max(1, math.ceil(STRAGGLERS_PER_LOG_N * math.log2(max(2, g.n))))
    else:
        lam0 = -(-g.m // max(1, g.delta))
    main_extend(chi, child_seed(seed, "extend", depth), lam0, stats=stats)
    return chi


def merge_halves(g: Graph, half0, half1, k: int) -> PartialColoring:
    """Combine two half colorings, keeping only the k biggest classes."""
    classes = []  # (size, merged class index, parent edge list)
    for gi, ci in (half0, half1):
        buckets = [[] for _ in range(ci.k + 1)]
        for e in range(gi.m):
            c = ci.color[e]
            if c:
                buckets[c].append(gi.parent_edges[e])
        for c in range(1, ci.k + 1):
            if buckets[c]:
                classes.append((len(buckets[c]), len(classes), buckets[c]))
    classes.sort(key=lambda t: (-t[0], t[1]))
    chi = PartialColoring(g, k)
    for slot_c, (_, _, edges) in enumerate(classes[:k], start=1):
        chi.adopt_class(edges, slot_c)
    if debug.enabled():
        chi.check()
    return chi


def _merge_stats(stats: dict, wstats: dict) -> None:
    for key, val in wstats.items():
        if isinstance(val, (int, float)):
            stats[key] = stats.get(key, 0) + val
        elif key == "events":
            ev = stats.setdefault("events", {})
            for name, cnt in val.items():
                ev[name] = ev.get(name, 0) + cnt
        elif key == "potential_trace":
            if debug.enabled():
                trace = val
                assert all(a <= b for a, b in zip(trace, trace[1:]))
