"""floor(3*Delta/2)-edge coloring of multigraphs (Shannon's bound).

The palette is large enough that every uncolored edge (u, v) either has a
common missing color or hangs a "Shannon fan": a colored companion edge
(u, w) with chi(u, w) = gamma in miss(v), plus colors alpha in miss(u) and
beta in miss(v) & miss(w). At most one of the {alpha, beta}-paths from v and
w ends at u, so flipping the other one always frees alpha for (u, v) --
possibly after handing gamma from (u, w) to (u, v).

The driver recurses on Euler partitions like the Vizing ones, but merges by
keeping whole color classes: the halves' palettes sum to at most the parent
palette plus two, and each dropped class is a matching, which is what the
batched fan construction below needs.
"""

from __future__ import annotations

from typing import Optional

from . import debug
from .coloring import PartialColoring
from .graphs import Graph, euler_partition
from .rng import child_seed, stream

__all__ = ["ShannonFan", "create_shannon_fan", "construct_pre_shannon_fans",
           "shannon_extend", "shannon_color", "shannon_palette"]

BASE_EDGES = 256


def shannon_palette(delta: int) -> int:
    return max(1, (3 * delta) // 2)


class ShannonFan:
    """Center u with uncolored (u, v) and companion (u, w) colored gamma."""

    __slots__ = ("u", "v", "w", "alpha", "beta", "gamma", "e_uv", "e_uw")

    def __init__(self, u, v, w, alpha, beta, gamma, e_uv, e_uw):
        self.u = u
        self.v = v
        self.w = w
        self.alpha = alpha   # missing at u
        self.beta = beta     # missing at v and w
        self.gamma = gamma   # chi(e_uw), missing at v
        self.e_uv = e_uv
        self.e_uw = e_uw

    def __repr__(self):
        return (f"ShannonFan(u={self.u}, v={self.v}, w={self.w}, "
                f"alpha={self.alpha}, beta={self.beta}, gamma={self.gamma})")

    def valid(self, chi: PartialColoring) -> bool:
        return (chi.color[self.e_uv] == 0
                and chi.color[self.e_uw] == self.gamma
                and chi.is_missing(self.u, self.alpha)
                and chi.is_missing(self.v, self.beta)
                and chi.is_missing(self.w, self.beta)
                and chi.is_missing(self.v, self.gamma))


class _PreFan:
    """(u, v, w, gamma) with (u, v) uncolored, chi(u, w) = gamma in miss(v)."""

    __slots__ = ("u", "v", "w", "gamma", "e_uv", "e_uw")

    def __init__(self, u, v, w, gamma, e_uv, e_uw):
        self.u = u
        self.v = v
        self.w = w
        self.gamma = gamma
        self.e_uv = e_uv
        self.e_uw = e_uw


def _check_palette(chi: PartialColoring) -> None:
    if chi.k < shannon_palette(chi.g.delta):
        raise ValueError(
            f"palette of {chi.k} colors below floor(3*Delta/2) = "
            f"{shannon_palette(chi.g.delta)}")


def create_shannon_fan(chi: PartialColoring, e: int):
    """Color e outright if possible, else return its Shannon fan.

    Returns None when e was colored. The palette bound guarantees that v and
    w share a missing color whenever the direct cases fail: the three missing
    sets cannot be mutually disjoint inside floor(3*Delta/2) colors.
    """
    _check_palette(chi)
    g = chi.g
    u, v = g.src[e], g.dst[e]
    c = chi.common_missing(u, v)
    if c:
        chi.set_color(e, c)
        return None
    gamma = chi.missing_color_of(v)
    e_uw = chi.slot_at(u, gamma)  # exists: no common missing color
    w = g.other(e_uw, u)
    c = chi.common_missing(u, w)
    if c:
        # hand gamma over to (u, v) and recolor the companion
        chi.set_color(e_uw, 0)
        chi.set_color(e, gamma)
        chi.set_color(e_uw, c)
        return None
    alpha = chi.missing_color_of(u)
    beta = chi.common_missing(v, w)
    assert beta, "leaves of a Shannon fan must share a missing color"
    return ShannonFan(u, v, w, alpha, beta, gamma, e, e_uw)


def activate_shannon_fan(chi: PartialColoring, fan: ShannonFan) -> None:
    """Color the fan's uncolored edge by flipping one leaf path.

    u has {alpha, beta}-degree at most one, so at most one of the two leaf
    paths ends at u; the other flip frees alpha at its leaf without touching
    u. If v's path is the bad one, gamma first migrates from (u, w) to (u, v)
    and the freed companion edge takes alpha instead.
    """
    alpha = fan.alpha
    beta = fan.beta
    path, end, _ = chi.walk_alternating(fan.v, alpha, beta)
    if end != fan.u:
        chi.flip(path, alpha, beta)
        chi.set_color(fan.e_uv, alpha)
        return
    path, end, _ = chi.walk_alternating(fan.w, alpha, beta)
    assert end != fan.u, "both leaf paths of a Shannon fan end at its center"
    chi.flip(path, alpha, beta)
    chi.set_color(fan.e_uw, 0)
    chi.set_color(fan.e_uv, fan.gamma)
    chi.set_color(fan.e_uw, alpha)


def extend_shannon_edge(chi: PartialColoring, e: int) -> None:
    """Deterministic per-edge extension: fan construction plus one flip."""
    fan = create_shannon_fan(chi, e)
    if fan is not None:
        activate_shannon_fan(chi, fan)


def construct_pre_shannon_fans(chi: PartialColoring, uprime: list,
                               stats: Optional[dict] = None) -> list:
    """Greedy vertex-disjoint pre-fans for a matching without direct colors.

    One pass over the edges; for each, the lowest gamma in miss(v) whose
    companion endpoint is still unclaimed. The potential argument (each
    admitted fan blocks at most 8*Delta worth of future choices out of an
    initial Delta/4 per edge) yields at least ceil(|uprime|/64) fans.
    """
    g = chi.g
    fans = []
    claimed = set()
    psi = _potential(chi, uprime, claimed) if debug.enabled() else 0
    for e in uprime:
        u, v = g.src[e], g.dst[e]
        if debug.enabled():
            # no common missing color forces both endpoints to be heavy
            assert chi.common_missing(u, v) == 0
            assert 4 * g.deg[u] >= g.delta and 4 * g.deg[v] >= g.delta, \
                "pre-fan endpoint below the Delta/4 degree bound"
        if u in claimed or v in claimed:
            continue
        slot = chi.slot
        base_v = v * chi.stride
        base_u = u * chi.stride
        for gamma in range(1, chi.lim[v] + 1):
            if slot[base_v + gamma] != -1:
                continue
            e_uw = slot[base_u + gamma]
            if e_uw == -1:
                continue  # gamma is a common missing color after all
            w = g.other(e_uw, u)
            if w in claimed:
                continue
            fans.append(_PreFan(u, v, w, gamma, e, e_uw))
            claimed.update((u, v, w))
            if debug.enabled():
                nxt = _potential(chi, uprime, claimed)
                assert psi - nxt <= 8 * g.delta, \
                    "pre-fan insertion dropped the potential by more than 8*Delta"
                psi = nxt
            break
    if debug.enabled() and uprime:
        assert len(fans) >= -(-len(uprime) // 64), \
            "pre-fan yield below ceil(|U'|/64)"
    if stats is not None:
        stats["shannon_prefans"] = stats.get("shannon_prefans", 0) + len(fans)
    return fans


def _potential(chi: PartialColoring, uprime: list, claimed: set) -> int:
    """Sum over unblocked edges of their still-usable gamma choices."""
    g = chi.g
    total = 0
    for e in uprime:
        u, v = g.src[e], g.dst[e]
        if chi.color[e] != 0 or u in claimed or v in claimed:
            continue
        for gamma in range(1, chi.lim[v] + 1):
            if chi.is_missing(v, gamma):
                e_uw = chi.slot_at(u, gamma)
                if e_uw != -1 and g.other(e_uw, u) not in claimed:
                    total += 1
    return total


def _upgrade_prefan(chi: PartialColoring, pf: _PreFan):
    """Lemma-style upgrade: color (u, v) via an overlap, or emit a full fan.

    Returns None if the edge got colored, else the ShannonFan.
    """
    c = chi.common_missing(pf.u, pf.v)
    if c:
        chi.set_color(pf.e_uv, c)
        return None
    c = chi.common_missing(pf.u, pf.w)
    if c:
        chi.set_color(pf.e_uw, 0)
        chi.set_color(pf.e_uv, pf.gamma)
        chi.set_color(pf.e_uw, c)
        return None
    alpha = chi.missing_color_of(pf.u)
    beta = chi.common_missing(pf.v, pf.w)
    assert beta, "leaves of a Shannon fan must share a missing color"
    return ShannonFan(pf.u, pf.v, pf.w, alpha, beta, pf.gamma,
                      pf.e_uv, pf.e_uw)


def shannon_extend(chi: PartialColoring, U: list, rng,
                   stats: Optional[dict] = None) -> int:
    """Color an uncolored matching U within the floor(3*Delta/2) palette.

    Rounds of: direct-color scan, batched vertex-disjoint pre-fans, upgrade,
    and activation in random order (an activation flips a path whose
    endpoints may invalidate a later fan of the batch; those edges simply
    roll over to the next round). Holes never move, so the remaining
    uncolored edges stay a matching throughout.
    """
    _check_palette(chi)
    g = chi.g
    todo = [e for e in U if chi.color[e] == 0]
    if debug.enabled():
        ends = [x for e in todo for x in (g.src[e], g.dst[e])]
        assert len(ends) == len(set(ends)), "uncolored edges must form a matching"
    colored = 0
    stalls = 0
    while todo:
        before = len(todo)
        rest = []
        for e in sorted(todo):
            c = chi.common_missing(g.src[e], g.dst[e])
            if c:
                chi.set_color(e, c)
                colored += 1
            else:
                rest.append(e)
        if not rest:
            break
        fans = []
        for pf in construct_pre_shannon_fans(chi, rest, stats=stats):
            fan = _upgrade_prefan(chi, pf)
            if fan is None:
                colored += 1
            else:
                fans.append(fan)
        rng.shuffle(fans)
        for fan in fans:
            if not fan.valid(chi):
                continue  # damaged by an earlier flip; retry next round
            activate_shannon_fan(chi, fan)
            colored += 1
            if stats is not None:
                stats["shannon_fans"] = stats.get("shannon_fans", 0) + 1
        todo = [e for e in rest if chi.color[e] == 0]
        if len(todo) >= before:
            stalls += 1
            if stalls > 3:  # adversarial leftovers: per-edge is always safe
                for e in sorted(todo):
                    extend_shannon_edge(chi, e)
                    colored += 1
                todo = []
        if stats is not None:
            stats["shannon_rounds"] = stats.get("shannon_rounds", 0) + 1
        if debug.enabled():
            chi.check()
    return colored


def shannon_color(g: Graph, seed: int = 0,
                  stats: Optional[dict] = None) -> PartialColoring:
    """Proper edge coloring of a loopless multigraph with floor(3*Delta/2)
    colors (3 colors below Delta = 2; any matching takes 1)."""
    chi = _color_recursive(g, seed, depth=0, stats=stats)
    for e in sorted(chi.uncolored):
        extend_shannon_edge(chi, e)
    if debug.enabled():
        chi.check()
        assert not chi.uncolored
    if stats is not None:
        stats["colors_used"] = chi.colors_used()
    return chi


def _fresh(g: Graph) -> PartialColoring:
    chi = PartialColoring(g, shannon_palette(g.delta))
    # the missing-set counting behind fan construction needs the whole
    # palette at every vertex, not just the [deg+mu] prefix
    chi.lim = [chi.k] * g.n
    return chi


def _color_recursive(g: Graph, seed: int, depth: int,
                     stats: Optional[dict]) -> PartialColoring:
    if stats is not None:
        stats["max_depth"] = max(stats.get("max_depth", 0), depth)
    if g.delta <= 2 or g.m <= BASE_EDGES:
        chi = _fresh(g)
        for e in range(g.m):
            extend_shannon_edge(chi, e)
        return chi
    g0, g1 = euler_partition(g)
    chi0 = _color_recursive(g0, child_seed(seed, "part", depth, 0), depth + 1,
                            stats)
    chi1 = _color_recursive(g1, child_seed(seed, "part", depth, 1), depth + 1,
                            stats)
    chi = _fresh(g)
    # the halves' palettes sum to roughly the parent palette, so only a
    # handful of classes overflow it; each dropped class is a matching
    classes = []
    for gi, ci in ((g0, chi0), (g1, chi1)):
        buckets = [[] for _ in range(ci.k + 1)]
        for e in range(gi.m):
            c = ci.color[e]
            if c:
                buckets[c].append(gi.parent_edges[e])
        for c in range(1, ci.k + 1):
            if buckets[c]:
                classes.append((len(buckets[c]), len(classes), buckets[c]))
    classes.sort(key=lambda t: (-t[0], t[1]))
    for slot_c, (_, _, edges) in enumerate(classes[:chi.k], start=1):
        chi.adopt_class(edges, slot_c)
    if debug.enabled():
        chi.check()
    if stats is not None and len(classes) > chi.k:
        stats["dropped_classes"] = (stats.get("dropped_classes", 0)
                                    + len(classes) - chi.k)
    for i, (_, _, edges) in enumerate(classes[chi.k:]):
        shannon_extend(chi, edges, stream(seed, "class", depth, i),
                       stats=stats)
    return chi
