"""Vizing fans: construction, rotation and activation (simple graphs).

A fan F = (u, alpha), (v1, c1), ..., (vk, ck) hangs off an uncolored edge
(u, v1): each (u, v_{i+1}) is colored c_i and c_i is missing at v_i. The
terminal color ck is either missing at u (trivial fan) or repeats an earlier
c_j, in which case activation flips the maximal {alpha, ck}-path from u.

Activation re-validates the stored fan against the current coloring before
acting: callers may have uncolored one of its structural edges since the fan
was built (the chain-merging logic does exactly that), which shortens the
fan and typically makes it trivial.
"""

from __future__ import annotations

import time
from typing import Optional

from .coloring import PartialColoring
from .graphs import Graph

__all__ = ["VizingFan", "MultiVizingFan", "build_fan", "build_multi_fan",
           "rotate_to", "activate_fan", "activate_multi_fan", "extend_edge",
           "classic_vizing", "classic_vizing_multi", "greedy_2delta"]


class VizingFan:
    __slots__ = ("u", "alpha", "leaves", "colors", "edges", "trivial",
                 "repeat_j", "chain_color")

    def __init__(self, u, alpha, leaves, colors, edges, trivial, repeat_j):
        self.u = u
        self.alpha = alpha
        self.leaves = leaves     # v1..vk
        self.colors = colors     # c1..ck
        self.edges = edges       # edge ids of (u,v1)..(u,vk); edges[0] uncolored
        self.trivial = trivial
        self.repeat_j = repeat_j  # 1-based j with c_j == c_k, or 0
        self.chain_color = colors[-1]  # the alternating chain runs {alpha, ck}

    def __len__(self):
        return len(self.leaves)

    def __repr__(self):
        return (f"VizingFan(u={self.u}, alpha={self.alpha}, "
                f"leaves={self.leaves}, colors={self.colors})")


class MultiVizingFan:
    """Fan variant for multigraphs: each leaf carries a set of mu missing
    colors, and fan edges chain via a parent pointer (edge i's color belongs
    to its parent leaf's set) instead of a linear order."""

    __slots__ = ("u", "alpha", "leaves", "edges", "csets", "parent", "orig",
                 "trivial", "term_color", "term_j", "chain_color")

    def __init__(self, u, alpha, leaves, edges, csets, parent, orig,
                 trivial, term_color, term_j):
        self.u = u
        self.alpha = alpha
        self.leaves = leaves        # v1..vk
        self.edges = edges          # edge ids; edges[0] uncolored
        self.csets = csets          # per-leaf sorted color lists, size mu
        self.parent = parent        # parent[i]: index whose cset holds
        self.orig = orig            # edge colors at build time (orig[0] = 0)
        self.trivial = trivial
        self.term_color = term_color  # activation color c
        self.term_j = term_j          # earlier leaf index with c in its cset
        self.chain_color = term_color

    def __len__(self):
        return len(self.leaves)

    def __repr__(self):
        return (f"MultiVizingFan(u={self.u}, alpha={self.alpha}, "
                f"leaves={self.leaves}, csets={self.csets})")


def build_fan(chi: PartialColoring, e0: int, u: int, v: int, alpha: int,
              avoid=None) -> VizingFan:
    """Grow a fan from uncolored edge e0 = (u, v) with alpha missing at u.

    With `avoid` set (a SeparableCollection), every leaf color is drawn from
    the leaf's unreserved missing colors, so rotations never invalidate other
    components of the collection.
    """
    clr = avoid.missing_color if avoid is not None else chi.missing_color_of
    leaves = [v]
    edges = [e0]
    c = clr(v)
    colors = [c]
    index_of = {c: 1}
    slot = chi.slot
    stride = chi.stride
    base = u * stride
    while True:
        if chi.is_missing(u, c):
            return VizingFan(u, alpha, leaves, colors, edges, True, 0)
        j = index_of.get(c)
        if j is not None and j < len(colors):
            return VizingFan(u, alpha, leaves, colors, edges, False, j)
        e = slot[base + c]
        w = chi.g.other(e, u)
        leaves.append(w)
        edges.append(e)
        c = clr(w)
        colors.append(c)
        if c not in index_of:
            index_of[c] = len(colors)


def rotate_to(chi: PartialColoring, fan, t: int) -> None:
    """Shift the uncolored slot from edge 1 to edge t (1-based)."""
    if isinstance(fan, MultiVizingFan):
        _rotate_multi(chi, fan, t - 1)
        return
    edges = fan.edges
    colors = fan.colors
    if t > 1:
        chi.set_color(edges[t - 1], 0)
        for i in range(t - 1, 0, -1):
            chi.set_color(edges[i - 1], colors[i - 1])


def activate_fan(chi: PartialColoring, fan) -> list:
    """Color the fan's uncolored edge; return [(vertex, color gained)].

    The gains are the colors this activation makes newly present at a
    vertex: at most the center (which spends a missing color), the terminal
    leaf, and one alternating-path endpoint. Callers use them for damage
    lookups.
    """
    if isinstance(fan, MultiVizingFan):
        return activate_multi_fan(chi, fan)
    u = fan.u
    alpha = fan.alpha
    edges = fan.edges
    colors = fan.colors
    leaves = fan.leaves
    col = chi.color
    # drop any suffix whose structural edges changed color since construction
    k = len(edges)
    valid = 1
    while valid < k and col[edges[valid]] == colors[valid - 1]:
        valid += 1
    k = valid
    # effective trivial index (staleness only adds missing colors at u)
    for i in range(k):
        if chi.is_missing(u, colors[i]):
            rotate_to(chi, fan, i + 1)
            chi.set_color(edges[i], colors[i])
            return [(u, colors[i])]
    ck = colors[k - 1]
    j = 0
    for i in range(k - 1):
        if colors[i] == ck:
            j = i + 1
            break
    if j == 0:
        raise AssertionError("fan neither trivial nor repeating after revalidation")
    path, end, _ = chi.walk_alternating(u, alpha, ck)
    if end != leaves[j - 1]:
        rotate_to(chi, fan, j + 1)
        rest = path[1:]
        if rest:
            gain_end = alpha + ck - col[rest[-1]]
            chi.flip(rest, alpha, ck)
            gains = [(end, gain_end)]
        else:
            gains = [(leaves[j], alpha)]
        chi.set_color(edges[j], alpha)
        gains.append((u, alpha))
        return gains
    # path ends at v_j: flip it all, then shift current colors down the fan
    gain_end = alpha + ck - col[path[-1]]
    chi.flip(path, alpha, ck)
    shifted = [col[edges[i]] for i in range(1, k)]  # current colors of e2..ek
    chi.set_color(edges[k - 1], 0)
    targets = shifted + [ck]
    for i in range(k, 0, -1):
        chi.set_color(edges[i - 1], targets[i - 1])
    return [(end, gain_end), (u, alpha)]


def _leaf_colors(chi: PartialColoring, x: int, count: int, avoid) -> list:
    """The `count` lowest eligible missing colors at x."""
    if avoid is not None:
        return avoid.missing_colors(x, count)
    slot = chi.slot
    base = x * chi.stride
    out = []
    for c in range(1, chi.lim[x] + 1):
        if slot[base + c] == -1:
            out.append(c)
            if len(out) == count:
                return out
    raise AssertionError(f"fewer than {count} missing colors at vertex {x}")


def build_multi_fan(chi: PartialColoring, e0: int, u: int, v: int, alpha: int,
                    avoid=None) -> MultiVizingFan:
    """Grow a multigraph fan from uncolored e0 = (u, v), alpha missing at u.

    Stops as soon as a leaf's color set meets miss(u) (trivial) or repeats a
    color of an earlier leaf (nontrivial); the counting argument guarantees
    one of the two within Delta/mu leaves.
    """
    g = chi.g
    mu = max(1, g.mu)
    leaves = [v]
    edges = [e0]
    parent = [-1]
    orig = [0]
    csets = []
    owner = {}       # color -> index of the leaf whose set holds it
    pending = []     # (color, owner index) queue of candidate fan edges
    leafset = {v}
    idx = 0
    while True:
        cw = _leaf_colors(chi, leaves[idx], mu, avoid)
        csets.append(cw)
        hit_miss = [c for c in cw if chi.is_missing(u, c)]
        if hit_miss:
            return MultiVizingFan(u, alpha, leaves, edges, csets, parent,
                                  orig, True, min(hit_miss), -1)
        hit_rep = [c for c in cw if c in owner]
        if hit_rep:
            c = min(hit_rep)
            return MultiVizingFan(u, alpha, leaves, edges, csets, parent,
                                  orig, False, c, owner[c])
        for c in cw:
            owner[c] = idx
            pending.append((c, idx))
        # some pending color's edge must lead to a fresh neighbor
        e = -1
        while pending:
            c, p = pending.pop(0)
            cand = chi.slot_at(u, c)
            if cand == -1:
                raise AssertionError("fan color became missing mid-build")
            w = g.other(cand, u)
            if w not in leafset:
                e = cand
                break
        if e == -1:
            raise AssertionError("multigraph fan ran out of candidate edges")
        leaves.append(w)
        edges.append(e)
        parent.append(p)
        orig.append(chi.color[e])
        leafset.add(w)
        idx += 1


def _rotate_multi(chi: PartialColoring, fan: MultiVizingFan, i: int) -> None:
    """Shift the uncolored slot to edges[i] along the parent chain."""
    if i == 0:
        return
    chain = [i]
    while chain[-1] != 0:
        chain.append(fan.parent[chain[-1]])
    chain.reverse()
    col = chi.color
    old = [col[fan.edges[t]] for t in chain]
    chi.set_color(fan.edges[i], 0)
    for s in range(len(chain) - 2, -1, -1):
        chi.set_color(fan.edges[chain[s]], old[s + 1])


def activate_multi_fan(chi: PartialColoring, fan: MultiVizingFan) -> list:
    """Color the multi-fan's uncolored edge; return gains as activate_fan."""
    u = fan.u
    alpha = fan.alpha
    edges = fan.edges
    col = chi.color
    # drop any suffix whose structural edges changed color since construction
    k = len(edges)
    valid = 1
    while valid < k and col[edges[valid]] == fan.orig[valid]:
        valid += 1
    k = valid
    # trivial scan (staleness only adds missing colors at u)
    for i in range(k):
        hit = [c for c in fan.csets[i] if chi.is_missing(u, c)]
        if hit:
            c = min(hit)
            _rotate_multi(chi, fan, i)
            chi.set_color(edges[i], c)
            return [(u, c)]
    # earliest repeated color within the valid prefix
    owner = {}
    t = j = c = -1
    for i in range(k):
        hit = [x for x in fan.csets[i] if x in owner]
        if hit:
            c = min(hit)
            t, j = i, owner[c]
            break
        for x in fan.csets[i]:
            owner[x] = i
    if t < 0:
        raise AssertionError("fan neither trivial nor repeating after revalidation")
    # flip the {alpha, c}-chain from the center, as in the simple case. The
    # rotations below shift only leaf-set colors, which are disjoint from
    # {alpha, c}, so they never perturb the chain.
    path, end, _ = chi.walk_alternating(u, alpha, c)
    if end != fan.leaves[j]:
        # hole to the owner leaf: the flip turns the chain's first edge into
        # alpha at u and frees c there, so edges[j] can take c
        _rotate_multi(chi, fan, j)
        gain_end = alpha + c - col[path[-1]]
        chi.flip(path, alpha, c)
        chi.set_color(edges[j], c)
        return [(end, gain_end), (u, alpha)]
    # chain ends at the owner leaf: flipping hands it c and frees alpha
    # there, which lets the hole rotate through to the terminal leaf
    gain_end = alpha + c - col[path[-1]]
    chi.flip(path, alpha, c)
    _rotate_multi(chi, fan, t)
    chi.set_color(edges[t], c)
    return [(end, gain_end), (u, alpha)]


def extend_edge(chi: PartialColoring, e: int, avoid=None) -> list:
    """Color one uncolored edge by the classic fan+chain step; return gains."""
    g = chi.g
    u, v = g.src[e], g.dst[e]
    c = chi.common_missing(u, v)
    if c:
        chi.set_color(e, c)
        return []
    alpha = (avoid.missing_color(u) if avoid is not None
             else chi.missing_color_of(u))
    builder = build_fan if g.is_simple() else build_multi_fan
    fan = builder(chi, e, u, v, alpha, avoid=avoid)
    return activate_fan(chi, fan)


def classic_vizing(g: Graph, budget_s: Optional[float] = None,
                   stats: Optional[dict] = None) -> PartialColoring:
    """Baseline: extend edges one at a time. O(m*n) worst case by design."""
    if not g.is_simple():
        raise ValueError("classic_vizing expects a simple graph")
    chi = PartialColoring(g, max(1, g.delta + 1))
    t0 = time.perf_counter()
    timed_out = False
    for e in range(g.m):
        extend_edge(chi, e)
        if budget_s is not None and (e & 255) == 0 \
                and time.perf_counter() - t0 > budget_s:
            timed_out = True
            break
    if stats is not None:
        stats["timed_out"] = timed_out
        stats["uncolored"] = len(chi.uncolored)
    return chi


def classic_vizing_multi(g: Graph, budget_s: Optional[float] = None,
                         stats: Optional[dict] = None) -> PartialColoring:
    """Baseline: per-edge extension with a Delta+mu palette (multigraphs)."""
    chi = PartialColoring(g, max(1, g.delta + g.mu))
    t0 = time.perf_counter()
    timed_out = False
    for e in range(g.m):
        extend_edge(chi, e)
        if budget_s is not None and (e & 255) == 0 \
                and time.perf_counter() - t0 > budget_s:
            timed_out = True
            break
    if stats is not None:
        stats["timed_out"] = timed_out
        stats["uncolored"] = len(chi.uncolored)
    return chi


def greedy_2delta(g: Graph) -> PartialColoring:
    """First-fit with a 2*Delta-1 palette (works for multigraphs too)."""
    k = max(1, 2 * g.delta - 1)
    chi = PartialColoring(g, k)
    slot = chi.slot
    s = chi.stride
    for e in range(g.m):
        u, v = g.src[e], g.dst[e]
        bu = u * s
        bv = v * s
        for c in range(1, k + 1):
            if slot[bu + c] == -1 and slot[bv + c] == -1:
                chi.set_color(e, c)
                break
        else:
            raise AssertionError(f"greedy ran out of colors at edge {e}")
    return chi
