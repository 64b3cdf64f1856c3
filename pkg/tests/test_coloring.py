import random

import pytest
from hypothesis import given, settings, strategies as st

from edgecolor.coloring import PartialColoring
from edgecolor.graphs import generate
from edgecolor.vizing import greedy_2delta

from helpers import proper_ok, random_graph_small


def partial_greedy(g, k, r, keep=0.7):
    """Random proper partial coloring with palette k (restricted lookups)."""
    chi = PartialColoring(g, k)
    for e in r.sample(range(g.m), g.m):
        if r.random() > keep:
            continue
        u, v = g.src[e], g.dst[e]
        c = chi.common_missing(u, v)
        if c:
            chi.set_color(e, c)
    return chi


def test_set_color_and_slots():
    g = generate("cycle", {"n": 5})
    chi = PartialColoring(g, 3)
    chi.set_color(0, 1)
    chi.set_color(1, 2)
    assert chi.slot_at(1, 1) == 0 and chi.slot_at(1, 2) == 1
    with pytest.raises(ValueError):
        chi.set_color(2, 2)  # vertex 2 already has color 2
    chi.set_color(1, 0)
    assert chi.slot_at(1, 2) == -1
    assert 1 in chi.uncolored
    chi.check()


def test_missing_color_queries():
    g = generate("complete", {"n": 4})
    chi = PartialColoring(g, 4)
    assert chi.missing_color_of(0) == 1
    chi.set_color(0, 1)  # edge (0,1)
    assert chi.missing_color_of(0) == 2
    assert not chi.is_missing(1, 1)
    assert chi.common_missing(0, 1) == 2
    assert chi.is_missing(0, 4)
    # restriction: scans stay within deg+1
    p = generate("path", {"n": 3})
    chp = PartialColoring(p, 2)
    chp.set_color(0, 1)
    chp.set_color(1, 2)
    assert chp.missing_color_of(0) == 2  # endpoint scan capped at deg+1


def test_least_common_colors():
    g = generate("complete", {"n": 6})
    chi = greedy_2delta(g)
    order = chi.least_common_colors(chi.k)
    sizes = [chi.class_size[c] for c in order]
    assert sizes == sorted(sizes)
    # lowest index breaks ties
    for a, b in zip(order, order[1:]):
        if chi.class_size[a] == chi.class_size[b]:
            assert a < b


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10_000))
def test_walk_flip_properties(seed):
    r = random.Random(seed)
    g = random_graph_small(r)
    k = g.delta + 1
    chi = partial_greedy(g, k, r)
    chi.check()
    v = r.randrange(g.n)
    a, b = r.sample(range(1, k + 1), 2) if k >= 2 else (1, 1)
    if a == b or not (chi.is_missing(v, a) or chi.is_missing(v, b)):
        return
    edges, end, trunc = chi.walk_alternating(v, a, b)
    assert not trunc
    # path edges alternate between the two colors
    cols = [chi.color[e] for e in edges]
    assert all(c in (a, b) for c in cols)
    for c1, c2 in zip(cols, cols[1:]):
        assert c1 != c2
    # maximality: the end vertex misses the color that would extend the walk
    if edges:
        nxt = a + b - cols[-1]
        assert chi.slot_at(end, nxt) == -1
    before = list(chi.color)
    gains = chi.flip_with_damage(edges, a, b, v, end)
    chi.check()
    assert proper_ok(g, chi.color, k)
    for x, c in gains:
        assert chi.slot_at(x, c) != -1  # the gained color is now present
    # flipping back restores everything
    chi.flip(edges, a, b)
    assert chi.color == before
    chi.check()


def test_walk_limit_truncation():
    g = generate("path", {"n": 6})
    chi = PartialColoring(g, 3)
    for e in range(5):
        chi.set_color(e, 1 + (e % 2))
    edges, _, trunc = chi.walk_alternating(0, 1, 2, limit=2)
    assert trunc and len(edges) == 2
    edges, end, trunc = chi.walk_alternating(0, 1, 2)
    assert not trunc and len(edges) == 5 and end == 5
