"""Delta-edge-coloring of bipartite graphs.

`bipartite_extension` colors a constant fraction (about 1/(20*Delta)) of a
matching of holes: pick the two least common colors (alpha, beta), then
repeatedly sample a hole and either color it directly (both ends miss the
same color) or "popularize" it by flipping two alternating paths so that one
end misses alpha and the other misses beta. A popular edge sits on an
{alpha,beta}-path that, in a bipartite graph, can never loop back to its
other endpoint, so flipping that path frees a shared color. Sampling
succeeds at least half the time because few edges wear the two least common
colors. The driver recurses on Euler partitions: each half needs only about
half the palette, and merging wastes at most two classes, which extension
waves then repair -- Delta colors total, near-linear time.
"""

from __future__ import annotations

import random
from typing import Optional

from . import debug
from .coloring import PartialColoring
from .driver import merge_halves
from .graphs import Graph, euler_partition
from .rng import child_seed, stream

__all__ = ["bipartite_extension", "bipartite_delta_color"]


def bipartite_extension(chi: PartialColoring, U: list, rng: random.Random,
                        stats: Optional[dict] = None) -> int:
    """Color >= ceil(lam/(10*Delta))/2 edges of the uncolored matching U."""
    lam = len(U)
    if lam == 0:
        return 0
    if chi.k < 2:  # a 1-color palette means U is a set of isolated edges
        for e in U:
            chi.set_color(e, 1)
        return lam
    g = chi.g
    alpha, beta = chi.least_common_colors(2)
    target = max(1, -(-lam // (10 * max(1, g.delta))))
    phi = {}            # edge -> (u, v) with alpha missing at u, beta at v
    phi_vertices = set()
    colored_direct = set()
    ab_edges0 = chi.class_size[alpha] + chi.class_size[beta]
    watchdog = 16 * target  # 8x the expected iterations at 1/2 success rate
    iters = 0
    restarts = 0
    while len(phi) + len(colored_direct) < target:
        if iters >= watchdog:
            restarts += 1
            iters = 0
            if restarts > 8:
                break
            rng = random.Random(rng.getrandbits(64))
        iters += 1
        if stats is not None:
            stats["bip_iterations"] = stats.get("bip_iterations", 0) + 1
        e = rng.choice(U)
        if e in phi or e in colored_direct:
            continue
        u, v = g.src[e], g.dst[e]
        cu = chi.missing_color_of(u)
        cv = chi.missing_color_of(v)
        if cu == cv:
            chi.set_color(e, cu)
            colored_direct.add(e)
            _note_success(chi, phi, alpha, beta, ab_edges0,
                          len(phi) + len(colored_direct), stats)
            continue
        if cu == beta or cv == alpha:
            u, v = v, u
            cu, cv = cv, cu
        # now cu != beta and cv != alpha, so the two paths share no color
        pu, end_u, _ = chi.walk_alternating(u, alpha, cu)
        pv, end_v, _ = chi.walk_alternating(v, beta, cv)
        if end_u in phi_vertices or end_v in phi_vertices:
            continue  # flipping would break an already popular edge
        if pu:
            chi.flip(pu, alpha, cu)
        if pv:
            chi.flip(pv, beta, cv)
        phi[e] = (u, v)
        phi_vertices.update((u, v))
        _note_success(chi, phi, alpha, beta, ab_edges0,
                      len(phi) + len(colored_direct), stats)
    if stats is not None:
        stats["bip_restarts"] = stats.get("bip_restarts", 0) + restarts
    colored_loop = _activate_popular(chi, phi, alpha, beta)
    if debug.enabled():
        assert colored_loop >= -(-len(phi) // 2), \
            f"activated {colored_loop} < ceil({len(phi)}/2) popular edges"
    if stats is not None:
        stats["bip_colored"] = (stats.get("bip_colored", 0)
                                + len(colored_direct) + colored_loop)
    return len(colored_direct) + colored_loop


def _note_success(chi, phi, alpha, beta, ab_edges0, successes, stats):
    if stats is not None:
        stats["bip_successes"] = stats.get("bip_successes", 0) + 1
    if debug.enabled():
        for pu, pv in phi.values():
            assert chi.is_missing(pu, alpha) and chi.is_missing(pv, beta), \
                "popular edge lost its missing-color orientation"
        ab = chi.class_size[alpha] + chi.class_size[beta]
        assert ab <= ab_edges0 + 4 * successes, \
            "too many edges wearing the working colors"


def _activate_popular(chi: PartialColoring, phi: dict,
                      alpha: int, beta: int) -> int:
    """Color at least half of the popular edges, evicting <= 1 per flip."""
    g = chi.g
    survivors = dict(phi)
    vmap = {}
    for e, (u, v) in phi.items():
        vmap[u] = e
        vmap[v] = e
    colored = 0
    for e, (u, v) in phi.items():
        if e not in survivors:
            continue
        del survivors[e]
        del vmap[u]
        del vmap[v]
        c = next((c for c in (alpha, beta)
                  if chi.is_missing(u, c) and chi.is_missing(v, c)), 0)
        if c:
            chi.set_color(e, c)
            colored += 1
            continue
        # u misses only alpha of the pair, v misses only beta: flip the
        # maximal {alpha,beta}-path at u so both ends come to miss beta
        path, end, _ = chi.walk_alternating(u, beta, alpha)
        if end == v:
            raise AssertionError(
                f"alternating path from edge {e} returned to its other "
                f"endpoint {v}: graph is not bipartite")
        chi.flip(path, alpha, beta)
        chi.set_color(e, beta)
        colored += 1
        # only the far endpoint changes palette; it can spoil at most one
        # other popular edge (they are vertex-disjoint)
        hurt = vmap.get(end)
        if hurt is not None:
            hu, hv = survivors.pop(hurt)
            del vmap[hu]
            del vmap[hv]
    return colored


def bipartite_delta_color(g: Graph, seed: int = 0,
                          stats: Optional[dict] = None) -> PartialColoring:
    """Proper Delta-edge-coloring of a bipartite graph, near-linear time."""
    if g.bipartition() is None:
        raise ValueError("graph is not bipartite")
    chi = _color_recursive(g, seed, depth=0, stats=stats)
    if debug.enabled():
        chi.check()
        assert not chi.uncolored
    if stats is not None:
        stats["colors_used"] = chi.colors_used()
    return chi


def _color_recursive(g: Graph, seed: int, depth: int,
                     stats: Optional[dict]) -> PartialColoring:
    if g.delta <= 1:
        chi = PartialColoring(g, max(1, g.delta))
        chi.adopt_class(list(range(g.m)), 1)
        return chi
    g0, g1 = euler_partition(g)
    chi0 = _color_recursive(g0, child_seed(seed, "part", depth, 0), depth + 1,
                            stats)
    chi1 = _color_recursive(g1, child_seed(seed, "part", depth, 1), depth + 1,
                            stats)
    # the halves use about Delta/2 colors each; keeping the Delta biggest
    # merged classes drops (at most) the two smallest
    chi = merge_halves(g, (g0, chi0), (g1, chi1), g.delta)
    attempt = 0
    stalls = 0
    while chi.uncolored:
        matching = _greedy_matching(g, chi.uncolored)
        colored = bipartite_extension(
            chi, matching, stream(seed, "ext", depth, attempt), stats=stats)
        attempt += 1
        stalls = stalls + 1 if colored == 0 else 0
        if stalls > 100:
            raise RuntimeError("extension made no progress")
    if stats is not None:
        stats["extension_calls"] = stats.get("extension_calls", 0) + attempt
    return chi


def _greedy_matching(g: Graph, edges) -> list:
    used = set()
    out = []
    for e in sorted(edges):
        u, v = g.src[e], g.dst[e]
        if u not in used and v not in used:
            used.update((u, v))
            out.append(e)
    return out
