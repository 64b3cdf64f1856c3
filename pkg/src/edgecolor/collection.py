"""Separable collections of u-components.

A u-component reserves missing colors at its vertices: a u-edge (u, v, alpha)
is an uncolored edge with alpha reserved at its center u; a u-fan
(u, v, w, alpha, beta) is a pair of uncolored edges (u,v), (u,w) with alpha
reserved at the center and beta at both leaves. A collection is separable
when components are edge-disjoint and no vertex has the same color reserved
twice; separability is what caps flip damage at two components per path.
"""

from __future__ import annotations

import random
from typing import Optional

from .coloring import PartialColoring

__all__ = ["UEdge", "UFan", "SeparableCollection"]


class UEdge:
    __slots__ = ("u", "v", "alpha", "e1", "pos")
    kind = "edge"

    def __init__(self, u: int, v: int, alpha: int, e1: int):
        self.u = u
        self.v = v
        self.alpha = alpha
        self.e1 = e1
        self.pos = -1

    def __repr__(self):
        return f"UEdge(u={self.u}, v={self.v}, alpha={self.alpha}, e={self.e1})"


class UFan:
    __slots__ = ("u", "v", "w", "alpha", "beta", "e1", "e2", "pos")
    kind = "fan"

    def __init__(self, u, v, w, alpha, beta, e1, e2):
        self.u = u
        self.v = v
        self.w = w
        self.alpha = alpha
        self.beta = beta
        self.e1 = e1  # uncolored edge (u, v)
        self.e2 = e2  # uncolored edge (u, w)
        self.pos = -1

    def __repr__(self):
        return (f"UFan(u={self.u}, v={self.v}, w={self.w}, "
                f"alpha={self.alpha}, beta={self.beta})")


class SeparableCollection:
    """Reservation index with O(1) insert/delete/find and uniform sampling."""

    def __init__(self, chi: PartialColoring):
        self.chi = chi
        # vertex * stride + color -> component (same indexing as chi.slot)
        self.psi = {}
        self.edge_owner = {}  # edge id -> component
        self.items = []       # dense array (swap-remove) for sampling
        self.n_fans = 0
        self.n_edges = 0
        # alpha -> insertion-ordered set of u-edges primed with alpha
        self.uedges_by_color = {}

    def __len__(self):
        return len(self.items)

    def __contains__(self, g):
        return g.pos >= 0 and g.pos < len(self.items) and self.items[g.pos] is g

    def _reservations(self, g):
        if g.kind == "edge":
            return ((g.u, g.alpha),)
        return ((g.u, g.alpha), (g.v, g.beta), (g.w, g.beta))

    def _edges(self, g):
        if g.kind == "edge":
            return (g.e1,)
        return (g.e1, g.e2)

    def insert(self, g) -> None:
        chi = self.chi
        slot = chi.slot
        stride = chi.stride
        color = chi.color
        psi = self.psi
        owner = self.edge_owner
        edges = self._edges(g)
        res = self._reservations(g)
        for e in edges:
            if color[e] != 0:
                raise ValueError(f"cannot insert {g!r}: edge {e} is colored")
            if e in owner:
                raise ValueError(f"cannot insert {g!r}: edge {e} already owned")
        for x, c in res:
            key = x * stride + c
            if slot[key] != -1:
                raise ValueError(f"cannot insert {g!r}: color {c} present at {x}")
            if key in psi:
                raise ValueError(f"cannot insert {g!r}: ({x},{c}) already reserved")
        for x, c in res:
            psi[x * stride + c] = g
        for e in edges:
            owner[e] = g
        g.pos = len(self.items)
        self.items.append(g)
        if g.kind == "edge":
            self.n_edges += 1
            self.uedges_by_color.setdefault(g.alpha, {})[g] = None
        else:
            self.n_fans += 1

    def delete(self, g) -> None:
        if g not in self:
            raise ValueError(f"{g!r} not in collection")
        stride = self.chi.stride
        for x, c in self._reservations(g):
            del self.psi[x * stride + c]
        for e in self._edges(g):
            del self.edge_owner[e]
        last = self.items.pop()
        if last is not g:
            self.items[g.pos] = last
            last.pos = g.pos
        g.pos = -1
        if g.kind == "edge":
            self.n_edges -= 1
            del self.uedges_by_color[g.alpha][g]
        else:
            self.n_fans -= 1

    def discard(self, g) -> bool:
        if g in self:
            self.delete(g)
            return True
        return False

    def find_component(self, x: int, c: int):
        """Component reserving color c at vertex x, or None."""
        return self.psi.get(x * self.chi.stride + c)

    def missing_color(self, x: int, forbid: int = 0) -> int:
        """Lowest color missing at x and not reserved there (always exists)."""
        chi = self.chi
        slot = chi.slot
        base = x * chi.stride
        psi = self.psi
        skip = base + forbid
        for key in range(base + 1, base + chi.lim[x] + 1):
            if key != skip and slot[key] == -1 and key not in psi:
                return key - base
        raise AssertionError(f"no spare missing color at vertex {x}")

    def missing_colors(self, x: int, count: int, forbid: int = 0) -> list:
        """The `count` lowest colors missing at x and not reserved there."""
        chi = self.chi
        slot = chi.slot
        base = x * chi.stride
        psi = self.psi
        skip = base + forbid
        out = []
        for key in range(base + 1, base + chi.lim[x] + 1):
            if key != skip and slot[key] == -1 and key not in psi:
                out.append(key - base)
                if len(out) == count:
                    return out
        raise AssertionError(f"fewer than {count} spare colors at vertex {x}")

    def sample_uniform(self, r: random.Random):
        return self.items[r.randrange(len(self.items))]

    def uedges_with_color(self, alpha: int) -> list:
        """Snapshot of alpha-primed u-edges in insertion order."""
        return list(self.uedges_by_color.get(alpha, ()))

    def fans(self) -> list:
        return [g for g in self.items if g.kind == "fan"]

    def damaged_by_gains(self, gains) -> list:
        """Components whose reservation was destroyed by (vertex, color) gains."""
        psi = self.psi
        stride = self.chi.stride
        out = []
        for x, c in gains:
            g = psi.get(x * stride + c)
            if g is not None and g not in out:
                out.append(g)
        return out

    # -- auditing ----------------------------------------------------------

    def check(self) -> None:
        chi = self.chi
        seen_edges = set()
        seen_res = set()
        for i, g in enumerate(self.items):
            assert g.pos == i
            for e in self._edges(g):
                assert chi.color[e] == 0, f"{g!r}: edge {e} is colored"
                assert e not in seen_edges, f"edge {e} in two components"
                seen_edges.add(e)
                assert self.edge_owner.get(e) is g
            for x, c in self._reservations(g):
                assert chi.is_missing(x, c), f"{g!r}: color {c} present at {x}"
                assert (x, c) not in seen_res, f"({x},{c}) reserved twice"
                seen_res.add((x, c))
                assert self.psi.get(x * chi.stride + c) is g
            if g.kind == "fan":
                assert g.alpha != g.beta
                assert len({g.u, g.v, g.w}) == 3
        assert len(seen_res) == len(self.psi)
        assert len(seen_edges) == len(self.edge_owner)
        assert self.n_edges + self.n_fans == len(self.items)
