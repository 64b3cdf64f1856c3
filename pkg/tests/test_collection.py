import random

import pytest
from hypothesis import given, settings, strategies as st

from edgecolor.collection import SeparableCollection, UEdge, UFan
from edgecolor.coloring import PartialColoring
from edgecolor.graphs import generate
from edgecolor import rng as _rng

from helpers import random_graph_small
from test_coloring import partial_greedy


def fresh(n=5):
    g = generate("complete", {"n": n})
    chi = PartialColoring(g, g.delta + 1)
    return g, chi


def test_insert_find_delete():
    g, chi = fresh()
    U = SeparableCollection(chi)
    e = 0  # (0, 1)
    ue = UEdge(0, 1, 1, e)
    U.insert(ue)
    assert len(U) == 1 and U.n_edges == 1
    assert U.find_component(0, 1) is ue
    assert U.find_component(1, 1) is None  # u-edge reserves only at its center
    assert U.uedges_with_color(1) == [ue]
    U.check()
    U.delete(ue)
    assert len(U) == 0 and U.find_component(0, 1) is None
    with pytest.raises(ValueError):
        U.delete(ue)


def test_separability_enforced():
    g, chi = fresh()
    U = SeparableCollection(chi)
    U.insert(UEdge(0, 1, 1, 0))
    with pytest.raises(ValueError):  # same reservation (0, 1)
        U.insert(UEdge(0, 2, 1, 1))
    with pytest.raises(ValueError):  # same edge
        U.insert(UEdge(1, 0, 2, 0))
    chi.set_color(4, 1)  # edge (1,2) gets color 1
    with pytest.raises(ValueError):  # color 1 now present at vertex 1
        U.insert(UEdge(1, 3, 1, 5))
    with pytest.raises(ValueError):  # colored edge cannot join
        U.insert(UEdge(1, 2, 2, 4))


def test_fan_reservations_and_damage():
    g, chi = fresh()
    U = SeparableCollection(chi)
    f = UFan(0, 1, 2, 1, 2, 0, 1)  # edges (0,1) and (0,2)
    U.insert(f)
    assert U.n_fans == 1
    assert U.find_component(1, 2) is f and U.find_component(2, 2) is f
    assert U.damaged_by_gains([(1, 2), (9, 9)]) == [f]
    assert U.damaged_by_gains([(1, 2), (2, 2)]) == [f]  # no duplicates
    assert U.missing_color(0) == 2  # 1 is reserved at the center
    assert U.missing_color(1) == 1  # 2 is reserved at this leaf
    U.check()


def test_sampling_uniform_and_swap_remove():
    g, chi = fresh(7)
    U = SeparableCollection(chi)
    comps = []
    for i, (u, v) in enumerate([(0, 1), (2, 3), (4, 5)]):
        eid = next(e for e in range(g.m)
                   if {g.src[e], g.dst[e]} == {u, v})
        c = UEdge(u, v, 1, eid)
        U.insert(c)
        comps.append(c)
    U.delete(comps[0])  # swap-remove keeps the dense array consistent
    assert len(U) == 2 and all(c in U for c in comps[1:])
    r = _rng.stream(0, "test")
    counts = {id(c): 0 for c in comps[1:]}
    for _ in range(400):
        counts[id(U.sample_uniform(r))] += 1
    assert min(counts.values()) > 120


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_spare_color_always_exists(seed):
    # counting bound: reservations at x never exhaust miss(x) within deg+1
    r = random.Random(seed)
    g = random_graph_small(r)
    chi = partial_greedy(g, g.delta + 1, r, keep=0.5)
    U = SeparableCollection(chi)
    for e in sorted(chi.uncolored):
        u, v = g.src[e], g.dst[e]
        U.insert(UEdge(u, v, U.missing_color(u), e))
    U.check()
    for x in range(g.n):
        if g.deg[x]:
            c = U.missing_color(x)
            assert chi.is_missing(x, c) and U.find_component(x, c) is None
