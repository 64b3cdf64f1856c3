import random

import pytest

from edgecolor.graphs import (Graph, euler_partition, generate, parse_graph,
                              serialize_graph, sniff_format)


def test_basic_construction():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 1)])
    assert g.m == 4 and g.n == 4
    assert g.deg == [2, 3, 2, 1]
    assert g.delta == 3
    assert g.mu == 2
    assert not g.is_simple()
    assert g.other(0, 0) == 1 and g.other(0, 1) == 0


def test_rejects_self_loops():
    with pytest.raises(ValueError):
        Graph(2, [(1, 1)])


def test_parse_edge_list_roundtrip():
    text = "# comment\n0 1\n1 2\n\n2 0  # inline\n"
    g = parse_graph(text, "edge_list")
    assert (g.n, g.m) == (3, 3)
    g2 = parse_graph(serialize_graph(g), "edge_list")
    assert list(g2.edges()) == list(g.edges())


def test_parse_dimacs():
    text = "c header\np edge 4 3\ne 1 2\ne 2 3\ne 3 4\n"
    g = parse_graph(text, "dimacs")
    assert (g.n, g.m) == (4, 3)
    assert list(g.edges()) == [(0, 1), (1, 2), (2, 3)]
    with pytest.raises(ValueError):
        parse_graph("p edge 2 5\ne 1 2\n", "dimacs")
    assert sniff_format(text) == "dimacs"
    assert sniff_format("0 1\n") == "edge_list"


def test_generators():
    assert generate("complete", {"n": 5}).m == 10
    assert generate("complete_bipartite", {"a": 3, "b": 4}).m == 12
    assert generate("cycle", {"n": 7}).deg == [2] * 7
    assert generate("grid", {"rows": 3, "cols": 4}).m == 17
    st = generate("shannon_triangle", {"mu": 4})
    assert st.m == 12 and st.delta == 8 and st.mu == 4
    pet = generate("petersen", {})
    assert pet.deg == [3] * 10

    g = generate("gnm", {"n": 40, "m": 120}, seed=7)
    assert g.m == 120 and g.is_simple()
    g2 = generate("gnm", {"n": 40, "m": 120}, seed=7)
    assert list(g.edges()) == list(g2.edges())  # deterministic per seed
    g3 = generate("gnm", {"n": 40, "m": 120}, seed=8)
    assert list(g.edges()) != list(g3.edges())

    mg = generate("gnm_multi", {"n": 6, "m": 40}, seed=3)
    assert mg.m == 40 and all(u != v for u, v in mg.edges())

    rr = generate("random_regular", {"n": 30, "d": 4}, seed=5)
    assert rr.deg == [4] * 30 and rr.is_simple()


def test_bipartition():
    assert generate("cycle", {"n": 6}).bipartition() is not None
    assert generate("cycle", {"n": 5}).bipartition() is None
    side = generate("complete_bipartite", {"a": 2, "b": 3}).bipartition()
    assert side[0] == side[1] != side[2]


def test_euler_partition_covers_and_balances():
    r = random.Random(0)
    for trial in range(30):
        n = r.randint(2, 30)
        m = r.randint(1, min(100, n * (n - 1) // 2))
        g = generate("gnm", {"n": n, "m": m}, seed=trial)
        g0, g1 = euler_partition(g)
        assert g0.m + g1.m == g.m
        assert sorted(g0.parent_edges + g1.parent_edges) == list(range(g.m))
        for i in g0.parent_edges:
            pass
        for v in range(n):
            d = g.deg[v]
            # alternation along closed tours: each part gets at most
            # ceil(d/2) + 1 edges at any vertex, and exactly the total
            assert g0.deg[v] + g1.deg[v] == d
            assert max(g0.deg[v], g1.deg[v]) <= (d + 1) // 2 + 1


def test_euler_partition_multigraph():
    g = generate("shannon_triangle", {"mu": 5})
    g0, g1 = euler_partition(g)
    assert g0.m + g1.m == 15
    for v in range(3):
        assert max(g0.deg[v], g1.deg[v]) <= 6
