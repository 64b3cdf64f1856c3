"""Immutable multigraphs with stable edge ids, generators and file I/O.

Vertices are 0..n-1. Edges are numbered 0..m-1 in construction order and
keep those ids through serialization, so a coloring file can always be
matched back to its graph. Parallel edges are allowed, self-loops are not
(edge coloring is undefined for loops).
"""

from __future__ import annotations

import random
from typing import Iterable, Optional, Sequence

from . import rng as _rng

__all__ = [
    "Graph",
    "parse_graph",
    "serialize_graph",
    "generate",
    "euler_partition",
]


class Graph:
    __slots__ = ("n", "m", "src", "dst", "deg", "parent_edges",
                 "_delta", "_mu", "_adj")

    def __init__(self, n: int, edges: Sequence[tuple], parent_edges=None):
        src = []
        dst = []
        deg = [0] * n
        for eid, (u, v) in enumerate(edges):
            if u == v:
                raise ValueError(f"self-loop at vertex {u} (edge {eid})")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {eid}: endpoint out of range")
            src.append(u)
            dst.append(v)
            deg[u] += 1
            deg[v] += 1
        self.n = n
        self.m = len(src)
        self.src = src
        self.dst = dst
        self.deg = deg
        # For subgraphs produced by euler_partition: our edge id -> parent's.
        self.parent_edges = parent_edges
        self._delta = max(deg) if n else 0
        self._mu = None
        self._adj = None

    @classmethod
    def _from_flat(cls, n, src, dst, parent_edges):
        """Unvalidated construction from parallel endpoint arrays (internal)."""
        g = cls.__new__(cls)
        deg = [0] * n
        for u in src:
            deg[u] += 1
        for v in dst:
            deg[v] += 1
        g.n = n
        g.m = len(src)
        g.src = src
        g.dst = dst
        g.deg = deg
        g.parent_edges = parent_edges
        g._delta = max(deg) if n else 0
        g._mu = None
        g._adj = None
        return g

    @property
    def adj(self) -> list:
        """Per-vertex list of (neighbor, edge id); built on first use."""
        if self._adj is None:
            adj = [[] for _ in range(self.n)]
            for eid, (u, v) in enumerate(zip(self.src, self.dst)):
                adj[u].append((v, eid))
                adj[v].append((u, eid))
            self._adj = adj
        return self._adj

    @property
    def delta(self) -> int:
        return self._delta

    @property
    def mu(self) -> int:
        """Maximum edge multiplicity (1 for a simple nonempty graph)."""
        if self._mu is None:
            if self.m == 0:
                self._mu = 0
            else:
                pairs = sorted(
                    (u, v) if u < v else (v, u)
                    for u, v in zip(self.src, self.dst)
                )
                best = run = 1
                for i in range(1, len(pairs)):
                    run = run + 1 if pairs[i] == pairs[i - 1] else 1
                    if run > best:
                        best = run
                self._mu = best
        return self._mu

    def is_simple(self) -> bool:
        return self.m == 0 or self.mu == 1

    def endpoints(self, eid: int) -> tuple:
        return self.src[eid], self.dst[eid]

    def other(self, eid: int, v: int) -> int:
        u = self.src[eid]
        return self.dst[eid] if v == u else u

    def bipartition(self) -> Optional[list]:
        """Two-coloring of the vertices, or None if an odd cycle exists."""
        side = [-1] * self.n
        for s in range(self.n):
            if side[s] >= 0:
                continue
            side[s] = 0
            queue = [s]
            while queue:
                v = queue.pop()
                sv = side[v]
                for w, _ in self.adj[v]:
                    if side[w] < 0:
                        side[w] = 1 - sv
                        queue.append(w)
                    elif side[w] == sv:
                        return None
        return side

    def edges(self) -> Iterable[tuple]:
        return zip(self.src, self.dst)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, delta={self.delta})"


# ---------------------------------------------------------------------------
# parsing / serialization


def parse_graph(text: str, fmt: str = "edge_list") -> Graph:
    """Parse `edge_list` (u v per line, '#' comments) or `dimacs` text."""
    if fmt == "edge_list":
        edges = []
        hi = -1
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'u v', got {raw!r}")
            u, v = int(parts[0]), int(parts[1])
            if u < 0 or v < 0:
                raise ValueError(f"line {lineno}: negative vertex label")
            edges.append((u, v))
            hi = max(hi, u, v)
        return Graph(hi + 1, edges)
    if fmt == "dimacs":
        n = None
        m_declared = None
        edges = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            if parts[0] == "p":
                if len(parts) != 4 or parts[1] != "edge":
                    raise ValueError(f"line {lineno}: bad problem line")
                n, m_declared = int(parts[2]), int(parts[3])
            elif parts[0] == "e":
                if len(parts) != 3:
                    raise ValueError(f"line {lineno}: bad edge line")
                edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
            else:
                raise ValueError(f"line {lineno}: unknown record {parts[0]!r}")
        if n is None:
            raise ValueError("missing 'p edge' header")
        if m_declared != len(edges):
            raise ValueError(
                f"header declares {m_declared} edges, found {len(edges)}")
        return Graph(n, edges)
    raise ValueError(f"unknown graph format {fmt!r}")


def sniff_format(text: str) -> str:
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        return "dimacs" if line[0] in "pce" and not line[0].isdigit() else "edge_list"
    return "edge_list"


def serialize_graph(g: Graph) -> str:
    lines = [f"{u} {v}" for u, v in g.edges()]
    lines.append("")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# generators


def _gnm_simple(n: int, m: int, r: random.Random) -> Graph:
    if n < 2 and m > 0:
        raise ValueError("need n >= 2 for edges")
    if m > n * (n - 1) // 2:
        raise ValueError("too many edges for a simple graph")
    seen = set()
    edges = []
    while len(edges) < m:
        u = r.randrange(n)
        v = r.randrange(n)
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            continue
        seen.add(key)
        edges.append((u, v))
    return Graph(n, edges)


def _gnm_multi(n: int, m: int, r: random.Random) -> Graph:
    edges = []
    for _ in range(m):
        u = r.randrange(n)
        v = r.randrange(n - 1)
        if v >= u:
            v += 1
        edges.append((u, v))
    return Graph(n, edges)


def _random_regular(n: int, d: int, seed: int) -> Graph:
    import networkx as nx

    gnx = nx.random_regular_graph(d, n, seed=random.Random(seed))
    return Graph(n, sorted((u, v) if u < v else (v, u) for u, v in gnx.edges()))


def _complete(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def _complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def _cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def _path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def _grid(rows: int, cols: int) -> Graph:
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def _shannon_triangle(mu: int) -> Graph:
    """Three vertices, mu parallel edges between each pair."""
    if mu < 1:
        raise ValueError("mu >= 1 required")
    edges = []
    for pair in ((0, 1), (1, 2), (0, 2)):
        edges.extend([pair] * mu)
    return Graph(3, edges)


def _petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def generate(kind: str, params: dict, seed: int = 0) -> Graph:
    """Build a named instance; randomized kinds derive their stream from seed."""
    r = _rng.stream(seed, "gen", kind)
    if kind == "gnm":
        return _gnm_simple(params["n"], params["m"], r)
    if kind == "gnm_multi":
        return _gnm_multi(params["n"], params["m"], r)
    if kind == "random_regular":
        return _random_regular(params["n"], params["d"],
                               _rng.child_seed(seed, "gen", kind))
    if kind == "complete":
        return _complete(params["n"])
    if kind == "complete_bipartite":
        return _complete_bipartite(params["a"], params["b"])
    if kind == "cycle":
        return _cycle(params["n"])
    if kind == "path":
        return _path(params["n"])
    if kind == "grid":
        return _grid(params["rows"], params["cols"])
    if kind == "shannon_triangle":
        return _shannon_triangle(params["mu"])
    if kind == "petersen":
        return _petersen()
    raise ValueError(f"unknown generator kind {kind!r}")


# ---------------------------------------------------------------------------
# Euler partition


def euler_partition(g: Graph) -> tuple:
    """Split g into two subgraphs along Eulerian tours.

    Odd-degree vertices are paired through a virtual vertex so every tour is
    closed; real edges are assigned to the two parts alternately along each
    tour, which splits every vertex's degree roughly in half. The returned
    graphs carry parent_edges mapping their edge ids back to g's.
    """
    n, m = g.n, g.m
    virt = n
    odd = [v for v in range(n) if g.deg[v] & 1]
    # adjacency with virtual edges appended; virtual edge ids are >= m
    ga = g.adj
    adj = list(ga)
    adj.append([])
    virt_adj = adj[virt]
    for k, v in enumerate(odd):
        eid = m + k
        adj[v] = ga[v] + [(virt, eid)]  # copy-on-extend; even vertices shared
        virt_adj.append((v, eid))
    total = m + len(odd)
    used = [False] * total
    ptr = [0] * (n + 1)

    part = [0] * m
    starts = [virt] + list(range(n))
    for s in starts:
        while ptr[s] < len(adj[s]):
            # skip already-used edges at s
            while ptr[s] < len(adj[s]) and used[adj[s][ptr[s]][1]]:
                ptr[s] += 1
            if ptr[s] >= len(adj[s]):
                break
            # one closed tour from s (Hierholzer, iterative); edges pop off
            # in tour order, so the alternating 0/1 labels are assigned
            # directly as they come off the stack
            vstack = [s]
            estack = [-1]
            pos = 0
            while vstack:
                v = vstack[-1]
                moved = False
                lst = adj[v]
                pv = ptr[v]
                end = len(lst)
                while pv < end:
                    w, eid = lst[pv]
                    pv += 1
                    if not used[eid]:
                        ptr[v] = pv
                        used[eid] = True
                        vstack.append(w)
                        estack.append(eid)
                        moved = True
                        break
                if not moved:
                    ptr[v] = pv
                    vstack.pop()
                    e_in = estack.pop()
                    if e_in >= 0:
                        if e_in < m:
                            part[e_in] = pos & 1
                        pos += 1

    src = g.src
    dst = g.dst
    e0 = [i for i in range(m) if not part[i]]
    e1 = [i for i in range(m) if part[i]]
    g0 = Graph._from_flat(n, [src[i] for i in e0], [dst[i] for i in e0], e0)
    g1 = Graph._from_flat(n, [src[i] for i in e1], [dst[i] for i in e1], e1)
    if g._mu == 1:
        # subgraphs of a simple graph are simple; skip recomputation
        if g0.m:
            g0._mu = 1
        if g1.m:
            g1._mu = 1
    return g0, g1
