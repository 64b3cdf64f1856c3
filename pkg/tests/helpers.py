"""Shared test oracles, written independently of the package internals."""

from __future__ import annotations

import itertools

from edgecolor.graphs import Graph


def proper_ok(g: Graph, colors, k=None) -> bool:
    """Independent properness check from the raw color list (0 = uncolored)."""
    seen = {}
    for e in range(g.m):
        c = colors[e]
        if c == 0:
            continue
        if k is not None and not (1 <= c <= k):
            return False
        for v in (g.src[e], g.dst[e]):
            if (v, c) in seen:
                return False
            seen[(v, c)] = e
    return True


def coloring_ok(g, chi, k=None, complete=True) -> bool:
    if complete and chi.uncolored:
        return False
    bound = k if k is not None else chi.k
    return proper_ok(g, chi.color, bound)


def colorable_with(g: Graph, k: int) -> bool:
    """Brute-force: is there a proper edge coloring with k colors?

    Backtracking over edges ordered by degree pressure; fine for tiny graphs
    (used up to ~20 edges / small palettes).
    """
    m = g.m
    order = sorted(range(m), key=lambda e: -(g.deg[g.src[e]] + g.deg[g.dst[e]]))
    used = [set() for _ in range(g.n)]

    def rec(i):
        if i == m:
            return True
        e = order[i]
        u, v = g.src[e], g.dst[e]
        for c in range(1, k + 1):
            if c not in used[u] and c not in used[v]:
                used[u].add(c)
                used[v].add(c)
                if rec(i + 1):
                    return True
                used[u].remove(c)
                used[v].remove(c)
        return False

    return rec(0)


def chromatic_index(g: Graph) -> int:
    k = g.delta
    while not colorable_with(g, k):
        k += 1
    return k


def random_graph_small(r, n_max=8):
    """Random small simple graph for exhaustive audits."""
    n = r.randint(2, n_max)
    pairs = list(itertools.combinations(range(n), 2))
    m = r.randint(1, len(pairs))
    return Graph(n, r.sample(pairs, m))


def random_bipartite(r, a, b, m):
    """Random bipartite simple graph: sides {0..a-1} and {a..a+b-1}."""
    pairs = [(u, a + v) for u in range(a) for v in range(b)]
    return Graph(a + b, r.sample(pairs, min(m, len(pairs))))


def random_multigraph_small(r, n_max=6, mu_max=3):
    n = r.randint(2, n_max)
    pairs = list(itertools.combinations(range(n), 2))
    edges = []
    for p in pairs:
        if r.random() < 0.6:
            edges.extend([p] * r.randint(1, mu_max))
    if not edges:
        edges = [pairs[0]]
    return Graph(n, edges)
