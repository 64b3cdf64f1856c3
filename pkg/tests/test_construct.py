import random

import pytest
from hypothesis import given, settings, strategies as st

from edgecolor import debug
from edgecolor.collection import SeparableCollection, UEdge
from edgecolor.coloring import PartialColoring
from edgecolor.construct import (construct_u_fans, create_u_edges,
                                 prune_vizing_fans, reduce_u_edges)
from edgecolor.graphs import generate

from helpers import proper_ok, random_graph_small
from test_coloring import partial_greedy


@pytest.fixture(autouse=True)
def _debug_invariants():
    debug.enable()
    yield
    debug.disable()


def run_construct(g, chi):
    lam = len(chi.uncolored)
    stats = {}
    colored, U = construct_u_fans(chi, stats=stats)
    chi.check()
    U.check()
    assert proper_ok(g, chi.color, chi.k)
    # accounting: every mutation either colors an edge or is hole-neutral
    assert len(chi.uncolored) == lam - colored
    # yield: a constant fraction of the holes turned into progress
    assert colored + U.n_fans >= -(-lam // 18)
    # the potential certificate never decreased
    trace = stats["potential_trace"]
    assert all(a <= b for a, b in zip(trace, trace[1:]))
    assert stats["lambda"] == lam
    return colored, U


def test_single_hole_gets_colored():
    g = generate("complete", {"n": 4})
    chi = partial_greedy(g, 4, random.Random(3), keep=1.0)
    if not chi.uncolored:  # make a hole if greedy filled everything
        chi.set_color(0, 0)
    colored, U = run_construct(g, chi)
    assert colored >= 1 or U.n_fans >= 1


def test_corpus_constructions():
    cases = [
        ("petersen", {}),
        ("complete", {"n": 7}),
        ("complete", {"n": 12}),
        ("grid", {"rows": 5, "cols": 6}),
        ("cycle", {"n": 9}),
        ("gnm", {"n": 40, "m": 160}),
        ("gnm", {"n": 80, "m": 400}),
    ]
    r = random.Random(7)
    for kind, params in cases:
        g = generate(kind, params, seed=1)
        for keep in (0.0, 0.4, 0.8):
            chi = partial_greedy(g, g.delta + 1, r, keep=keep)
            run_construct(g, chi)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 100_000))
def test_construct_random_small(seed):
    r = random.Random(seed)
    g = random_graph_small(r)
    chi = partial_greedy(g, g.delta + 1, r, keep=r.choice([0.0, 0.3, 0.7]))
    run_construct(g, chi)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_construct_denser_random(seed):
    r = random.Random(seed)
    n = r.randrange(10, 26)
    m = min(n * (n - 1) // 2, r.randrange(n, 4 * n))
    g = generate("gnm", {"n": n, "m": m}, seed=seed)
    chi = partial_greedy(g, g.delta + 1, r, keep=0.5)
    run_construct(g, chi)


def test_prune_reduce_single_color():
    # drive one color round by hand and check the registry empties out
    r = random.Random(11)
    g = generate("gnm", {"n": 30, "m": 90}, seed=5)
    chi = partial_greedy(g, g.delta + 1, r, keep=0.6)
    U = SeparableCollection(chi)
    lam = create_u_edges(chi, U)
    assert lam == len([e for e in range(g.m)]) - (g.m - len(chi.uncolored))
    alphas = sorted(c for c, d in U.uedges_by_color.items() if d)
    for alpha in alphas:
        if not U.uedges_by_color.get(alpha):
            continue
        rnd = prune_vizing_fans(chi, U, alpha)
        reduce_u_edges(chi, U, rnd)
        # lambda_alpha halves (or empties, for a single chain)
        assert rnd.alive_count() <= max(0, len(U.uedges_by_color.get(alpha, {})))
    chi.check()
    U.check()


@pytest.mark.parametrize("seed,event", [(91, "merge_opposite"),
                                        (1586, "merge_same")])
def test_chain_collisions_pinned(seed, event):
    # low-degree graphs grow long chains; these seeds make two of them collide
    r = random.Random(seed)
    g = generate("random_regular", {"n": 60, "d": 3}, seed=seed)
    chi = partial_greedy(g, g.delta + 1, r, keep=0.95)
    lam = len(chi.uncolored)
    stats = {}
    colored, U = construct_u_fans(chi, stats=stats)
    assert stats["events"].get(event)
    chi.check()
    U.check()
    assert len(chi.uncolored) == lam - colored


def test_construct_is_deterministic():
    g = generate("gnm", {"n": 50, "m": 200}, seed=9)
    outs = []
    for _ in range(2):
        chi = partial_greedy(g, g.delta + 1, random.Random(4), keep=0.5)
        construct_u_fans(chi)
        outs.append(list(chi.color))
    assert outs[0] == outs[1]
