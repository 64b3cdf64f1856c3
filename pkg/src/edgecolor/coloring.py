"""Mutable partial edge colorings.

Colors are 1..k; 0 means uncolored. The structure keeps, for every vertex v
and color c, the id of the incident edge colored c (the "slot"), which is
what makes alternating-path walking O(1) per step. Palettes are restricted
to [deg(v)+mu] (capped at k; mu=1 for simple graphs): every routine that
asks for missing colors at v only ever needs that range, and the
restriction keeps scans O(deg).
"""

from __future__ import annotations

import random
from typing import Optional

from .graphs import Graph

__all__ = ["UNCOLORED", "PartialColoring"]

UNCOLORED = 0  # internal sentinel; files use -1


class PartialColoring:
    __slots__ = ("g", "k", "stride", "color", "slot", "class_size",
                 "uncolored", "lim")

    def __init__(self, g: Graph, k: int):
        if k < g.delta:
            raise ValueError(f"palette of {k} colors below max degree {g.delta}")
        self.g = g
        self.k = k
        s = k + 1
        self.stride = s
        self.color = [0] * g.m
        self.slot = [-1] * (g.n * s)
        self.class_size = [0] * s
        self.uncolored = set(range(g.m))
        slack = max(1, g.mu)  # multigraphs need mu spare colors per vertex
        self.lim = [min(d + slack, k) for d in g.deg]

    # -- basic mutation ----------------------------------------------------

    def set_color(self, e: int, c: int) -> None:
        """Set edge e to color c (0 to uncolor). Replaces any previous color."""
        old = self.color[e]
        if old:
            self._unassign(e, old)
        if c:
            self._assign(e, c)

    def _assign(self, e: int, c: int) -> None:
        g = self.g
        s = self.stride
        slot = self.slot
        iu = g.src[e] * s + c
        iv = g.dst[e] * s + c
        if slot[iu] != -1 or slot[iv] != -1:
            raise ValueError(f"color {c} already present at an endpoint of {e}")
        slot[iu] = e
        slot[iv] = e
        self.color[e] = c
        self.class_size[c] += 1
        self.uncolored.remove(e)

    def _unassign(self, e: int, c: int) -> None:
        g = self.g
        s = self.stride
        slot = self.slot
        slot[g.src[e] * s + c] = -1
        slot[g.dst[e] * s + c] = -1
        self.color[e] = 0
        self.class_size[c] -= 1
        self.uncolored.add(e)

    def adopt_class(self, edges: list, c: int) -> None:
        """Bulk-assign color c to a known matching of uncolored edges."""
        g = self.g
        s = self.stride
        slot = self.slot
        col = self.color
        for e in edges:
            slot[g.src[e] * s + c] = e
            slot[g.dst[e] * s + c] = e
            col[e] = c
        self.class_size[c] += len(edges)
        self.uncolored.difference_update(edges)

    # -- queries -----------------------------------------------------------

    def slot_at(self, v: int, c: int) -> int:
        """Edge of color c at v, or -1."""
        return self.slot[v * self.stride + c]

    def is_missing(self, v: int, c: int) -> bool:
        """True membership test (the [deg+1] restriction applies only to scans)."""
        return self.slot[v * self.stride + c] == -1

    def missing_color_of(self, v: int) -> int:
        """Lowest color missing at v within the restricted palette."""
        slot = self.slot
        base = v * self.stride
        for c in range(1, self.lim[v] + 1):
            if slot[base + c] == -1:
                return c
        raise AssertionError(f"vertex {v} has no missing color")

    def common_missing(self, u: int, v: int) -> int:
        """Lowest color missing at both u and v, or 0 if none (scans u's range)."""
        slot = self.slot
        s = self.stride
        bu = u * s
        bv = v * s
        limv = self.lim[v]
        for c in range(1, self.lim[u] + 1):
            if slot[bu + c] == -1 and c <= limv and slot[bv + c] == -1:
                return c
        return 0

    def least_common_colors(self, count: int) -> list:
        """The `count` colors with smallest class sizes (lowest index breaks ties)."""
        cs = self.class_size
        order = sorted(range(1, self.k + 1), key=lambda c: (cs[c], c))
        return order[:count]

    def colors_used(self) -> int:
        return sum(1 for c in range(1, self.k + 1) if self.class_size[c] > 0)

    def class_edges(self, c: int) -> list:
        col = self.color
        return [e for e in range(self.g.m) if col[e] == c]

    # -- alternating paths -------------------------------------------------

    def walk_alternating(self, x: int, a: int, b: int, limit: int = -1):
        """Maximal {a,b}-alternating path from x, which must miss a or b.

        Returns (edges, end_vertex, truncated). With limit >= 0 the walk stops
        after limit edges and reports truncated=True (end_vertex is then the
        last vertex reached, not a path endpoint).
        """
        slot = self.slot
        s = self.stride
        src = self.g.src
        dst = self.g.dst
        both = a + b
        cur = x
        c = a if slot[x * s + a] != -1 else b
        edges = []
        append = edges.append
        while True:
            e = slot[cur * s + c]
            if e == -1:
                return edges, cur, False
            if limit >= 0 and len(edges) >= limit:
                return edges, cur, True
            append(e)
            w = src[e]
            cur = dst[e] if w == cur else w
            c = both - c

    def flip(self, edges: list, a: int, b: int) -> None:
        """Swap colors a <-> b along a path of edges (two-phase slot update)."""
        slot = self.slot
        s = self.stride
        src = self.g.src
        dst = self.g.dst
        col = self.color
        for e in edges:
            c = col[e]
            slot[src[e] * s + c] = -1
            slot[dst[e] * s + c] = -1
        both = a + b
        na = nb = 0
        for e in edges:
            c = both - col[e]
            col[e] = c
            slot[src[e] * s + c] = e
            slot[dst[e] * s + c] = e
            if c == a:
                na += 1
            else:
                nb += 1
        self.class_size[a] += na - nb
        self.class_size[b] += nb - na

    def flip_with_damage(self, edges: list, a: int, b: int,
                         x: int, y: int) -> list:
        """Flip a maximal path from x to y; return [(vertex, color_gained)].

        A flip only changes the palettes of the two endpoints: each gains the
        color its terminal edge acquires. Interior vertices keep {a, b}.
        """
        if not edges:
            return []
        both = a + b
        gx = both - self.color[edges[0]]
        gy = both - self.color[edges[-1]]
        self.flip(edges, a, b)
        if x == y:  # single-vertex degenerate call; cannot happen on real paths
            return [(x, gx)]
        return [(x, gx), (y, gy)]

    # -- auditing ----------------------------------------------------------

    def check(self) -> None:
        """Full consistency + properness audit (test/debug use)."""
        g = self.g
        s = self.stride
        seen_unc = 0
        per_vertex = [dict() for _ in range(g.n)]
        for e in range(g.m):
            c = self.color[e]
            if c == 0:
                assert e in self.uncolored, f"edge {e} missing from uncolored set"
                seen_unc += 1
                continue
            assert 1 <= c <= self.k, f"edge {e} color {c} out of palette"
            for v in (g.src[e], g.dst[e]):
                assert c not in per_vertex[v], \
                    f"color {c} repeated at vertex {v} (edge {e})"
                per_vertex[v][c] = e
        assert seen_unc == len(self.uncolored)
        for v in range(g.n):
            base = v * s
            for c in range(1, self.k + 1):
                e = self.slot[base + c]
                assert e == per_vertex[v].get(c, -1), \
                    f"slot mismatch at vertex {v} color {c}"
        for c in range(1, self.k + 1):
            real = sum(1 for e in range(g.m) if self.color[e] == c)
            assert real == self.class_size[c], f"class size drift for color {c}"
