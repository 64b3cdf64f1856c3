import random

import pytest
from hypothesis import given, settings, strategies as st

from edgecolor import debug
from edgecolor.coloring import PartialColoring
from edgecolor.construct import construct_u_fans
from edgecolor.driver import color_delta_plus_mu
from edgecolor.graphs import Graph, generate
from edgecolor.vizing import (activate_multi_fan, build_multi_fan,
                              classic_vizing, classic_vizing_multi,
                              extend_edge)

from helpers import proper_ok
from test_coloring import partial_greedy


@pytest.fixture(autouse=True)
def _debug_invariants():
    debug.enable()
    yield
    debug.disable()


def random_multigraph(r, n, m, dups):
    """A loopless multigraph: m random edges plus dups duplicated ones."""
    edges = []
    for _ in range(m):
        u = r.randrange(n)
        v = r.randrange(n - 1)
        if v >= u:
            v += 1
        edges.append((u, v))
    for _ in range(dups):
        edges.append(edges[r.randrange(len(edges))])
    return Graph(n, edges)


def check_multi_fan(chi, fan):
    """Oracle for the structural fan conditions, straight off the coloring."""
    g = chi.g
    mu = max(1, g.mu)
    u = fan.u
    k = len(fan.leaves)
    assert chi.is_missing(u, fan.alpha)
    assert len(set(fan.leaves)) == k and u not in fan.leaves
    assert chi.color[fan.edges[0]] == 0
    for i, (leaf, e, cset) in enumerate(zip(fan.leaves, fan.edges, fan.csets)):
        assert {g.src[e], g.dst[e]} == {u, leaf}
        assert len(cset) == mu
        for c in cset:
            assert chi.is_missing(leaf, c)
        if i > 0:
            p = fan.parent[i]
            assert 0 <= p < i
            assert chi.color[e] in fan.csets[p]
    # the prefix sets and miss(u) are mutually disjoint
    seen = set()
    for cset in fan.csets[:-1]:
        for c in cset:
            assert c not in seen
            assert not chi.is_missing(u, c)
            seen.add(c)
    last = set(fan.csets[-1])
    if fan.trivial:
        assert fan.term_color in last
        assert chi.is_missing(u, fan.term_color)
    else:
        assert fan.term_color in last & set(fan.csets[fan.term_j])
        assert not chi.is_missing(u, fan.term_color)


@pytest.mark.parametrize("seed", range(40))
def test_build_multi_fan_structure(seed):
    r = random.Random(seed)
    g = random_multigraph(r, r.randrange(8, 30), r.randrange(12, 60),
                          r.randrange(1, 6))
    chi = partial_greedy(g, g.delta + max(1, g.mu), r, keep=0.85)
    for e in sorted(chi.uncolored):
        u, v = g.src[e], g.dst[e]
        alpha = chi.missing_color_of(u)
        fan = build_multi_fan(chi, e, u, v, alpha)
        check_multi_fan(chi, fan)


@pytest.mark.parametrize("seed", range(40))
def test_activate_multi_fan_colors_the_edge(seed):
    r = random.Random(seed)
    g = random_multigraph(r, r.randrange(8, 30), r.randrange(12, 60),
                          r.randrange(1, 6))
    chi = partial_greedy(g, g.delta + max(1, g.mu), r, keep=0.85)
    while chi.uncolored:
        e = min(chi.uncolored)
        holes = len(chi.uncolored)
        u, v = g.src[e], g.dst[e]
        fan = build_multi_fan(chi, e, u, v, chi.missing_color_of(u))
        activate_multi_fan(chi, fan)
        chi.check()
        assert len(chi.uncolored) == holes - 1
    assert proper_ok(g, chi.color, chi.k)


def test_classic_vizing_rejects_multigraphs():
    g = Graph(3, [(0, 1), (0, 1), (1, 2)])
    with pytest.raises(ValueError):
        classic_vizing(g)


def test_classic_vizing_multi_corpus():
    for seed in range(30):
        r = random.Random(seed)
        g = random_multigraph(r, r.randrange(6, 25), r.randrange(8, 50),
                              r.randrange(1, 8))
        chi = classic_vizing_multi(g)
        assert not chi.uncolored
        assert proper_ok(g, chi.color, g.delta + g.mu)


def test_shannon_triangle_needs_all_colors():
    # three mutually adjacent bundles of mu edges: every pair of edges
    # conflicts, so exactly 3*mu = delta + mu colors are necessary
    for mu in range(1, 9):
        g = generate("shannon_triangle", {"mu": mu})
        assert g.delta == 2 * mu and g.mu == mu
        chi = color_delta_plus_mu(g, seed=mu)
        assert not chi.uncolored
        assert proper_ok(g, chi.color, g.delta + g.mu)
        assert chi.colors_used() == 3 * mu


def test_two_vertex_bundle():
    for mu in (1, 2, 5, 9):
        g = Graph(2, [(0, 1)] * mu)
        chi = color_delta_plus_mu(g, seed=0)
        assert not chi.uncolored
        assert proper_ok(g, chi.color, chi.k)
        assert chi.colors_used() == mu


def test_parallel_chain_merge_gadget():
    # two alpha-primed chains routed onto a parallel pair between x=7 and
    # y=8: the first chain crosses one copy, the second then meets the other
    # copy, which uncolors both, activates both fans and hands alpha to the
    # meeting edge
    edges = [
        (9, 10), (0, 1),                      # the two uncolored edges
        (0, 3), (0, 5), (0, 6), (1, 2), (3, 4), (5, 7),
        (7, 8), (7, 8),                       # the parallel pair
        (9, 13), (9, 16), (9, 17), (9, 18), (10, 11), (10, 12),
        (13, 14), (13, 15), (16, 8),
    ]
    colors = [0, 0, 2, 3, 4, 1, 1, 1, 3, 4,
              2, 4, 3, 5, 1, 3, 1, 3, 1]
    g = Graph(19, edges)
    assert g.delta == 5 and g.mu == 2
    chi = PartialColoring(g, g.delta + g.mu)
    for e, c in enumerate(colors):
        if c:
            chi.set_color(e, c)
    stats = {}
    colored, U = construct_u_fans(chi, stats=stats)
    chi.check()
    U.check()
    assert stats["events"] == {"merge_parallel": 1}
    assert colored == 1 and U.n_fans == 0
    assert chi.color[8] != 0 and chi.color[0] != 0 and chi.color[1] != 0
    for e in sorted(chi.uncolored):
        extend_edge(chi, e)
    chi.check()
    assert proper_ok(g, chi.color, chi.k) and not chi.uncolored


def test_multigraph_chain_merge_seed():
    # sparse near-regular multigraphs grow chains long enough to collide
    seed = 703
    r = random.Random(seed)
    base = generate("random_regular", {"n": 200, "d": 3}, seed=seed)
    edges = list(zip(base.src, base.dst))
    edges += [edges[e] for e in r.sample(range(len(edges)), 60)]
    g = Graph(base.n, edges)
    chi = partial_greedy(g, g.delta + g.mu, r, keep=0.98)
    lam = len(chi.uncolored)
    stats = {}
    colored, U = construct_u_fans(chi, stats=stats)
    assert stats["events"].get("merge_opposite")
    chi.check()
    U.check()
    assert len(chi.uncolored) == lam - colored


@pytest.mark.parametrize("seed", range(25))
def test_driver_multigraph_corpus(seed):
    r = random.Random(seed)
    g = random_multigraph(r, r.randrange(10, 80), r.randrange(20, 300),
                          r.randrange(1, 12))
    chi = color_delta_plus_mu(g, seed=seed)
    assert not chi.uncolored
    assert proper_ok(g, chi.color, chi.k)
    assert chi.colors_used() <= g.delta + max(1, g.mu)
    assert chi.k == g.delta + max(1, g.mu)


def test_driver_multigraph_deterministic():
    r = random.Random(17)
    g = random_multigraph(r, 40, 150, 10)
    runs = [list(color_delta_plus_mu(g, seed=5).color) for _ in range(2)]
    assert runs[0] == runs[1]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_driver_multigraph_small(seed):
    r = random.Random(seed)
    n = r.randrange(3, 10)
    g = random_multigraph(r, n, r.randrange(2, 16), r.randrange(0, 5))
    chi = color_delta_plus_mu(g, seed=seed)
    assert not chi.uncolored
    assert proper_ok(g, chi.color, g.delta + max(1, g.mu))
