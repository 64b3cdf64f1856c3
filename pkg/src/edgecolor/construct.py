"""Turning uncolored edges into colored edges or u-fans.

Given a partial coloring with L uncolored edges, `construct_u_fans` reserves
a missing color at one endpoint of each (making it a u-edge), then processes
the u-edges color by color: `prune_vizing_fans` makes their fans pairwise
vertex-disjoint (cashing in collisions for colorings or u-fans), and
`reduce_u_edges` grows the fans' alternating chains one edge per round in
lockstep, so that chains either finish (activate) or collide (merge into a
u-fan) after few rounds. The net yield is at least ceil(L/18) colorings plus
u-fans, certified by the potential 3*(fans + 2*colored) + uedges which never
decreases across events.
"""

from __future__ import annotations

from typing import Optional

from . import debug
from .collection import SeparableCollection, UEdge, UFan
from .coloring import PartialColoring
from .vizing import activate_fan, build_fan, build_multi_fan, rotate_to

__all__ = ["create_u_edges", "construct_u_fans", "prune_vizing_fans",
           "reduce_u_edges"]


class _FanState:
    """A live fan in the current color round, with its chain prefix."""
    __slots__ = ("fan", "uedge", "path", "end", "next_color", "alive", "sid")

    def __init__(self, fan, uedge: UEdge, sid: int):
        self.fan = fan
        self.uedge = uedge
        self.path = []
        self.end = fan.u
        self.next_color = fan.chain_color  # chains start on the repeat color
        self.alive = True
        self.sid = sid


class _Round:
    """Registry for one color's prune/reduce round."""

    def __init__(self, alpha: int, g=None):
        self.alpha = alpha
        self.g = g
        self.states = []
        self.vmap = {}       # vertex -> _FanState (fans are vertex-disjoint)
        self.by_uedge = {}   # UEdge -> _FanState
        self.S = {}          # edge id -> (_FanState, traversed-from vertex)
        # multigraphs track endpoint pairs so chains meeting at a parallel
        # pair are caught (prefix edges must stay pairwise non-parallel)
        self.pairs = None if g is None or g.is_simple() else {}

    def add(self, st: _FanState) -> None:
        self.states.append(st)
        self.by_uedge[st.uedge] = st
        self.vmap[st.fan.u] = st
        for v in st.fan.leaves:
            self.vmap[v] = st

    def drop(self, st: _FanState) -> None:
        if not st.alive:
            return
        st.alive = False
        del self.by_uedge[st.uedge]
        if self.vmap.get(st.fan.u) is st:
            del self.vmap[st.fan.u]
        for v in st.fan.leaves:
            if self.vmap.get(v) is st:
                del self.vmap[v]
        for e in st.path:
            if e in self.S and self.S[e][0] is st:
                del self.S[e]
                if self.pairs is not None:
                    u, v = self.g.src[e], self.g.dst[e]
                    key = (u, v) if u < v else (v, u)
                    if self.pairs.get(key) == e:
                        del self.pairs[key]
        st.path = []

    def alive_count(self) -> int:
        return sum(1 for st in self.states if st.alive)


def _remove_damaged(U: SeparableCollection, gains, rnd: Optional[_Round]):
    """Delete components whose reservation a mutation destroyed.

    If a removed component is a u-edge with a live fan in the current round,
    the fan (and its chain prefix) goes too, keeping |fans| == |u-edges|.
    """
    removed = 0
    for x, c in gains:
        g = U.find_component(x, c)
        if g is not None:
            U.delete(g)
            removed += 1
            if rnd is not None and g.kind == "edge":
                st = rnd.by_uedge.get(g)
                if st is not None:
                    rnd.drop(st)
    return removed


# ---------------------------------------------------------------------------


def create_u_edges(chi: PartialColoring, U: SeparableCollection) -> int:
    """Reserve a spare missing color at the first endpoint of every uncolored
    edge; the counting bound guarantees a spare always exists."""
    n = 0
    for e in sorted(chi.uncolored):
        u = chi.g.src[e]
        v = chi.g.dst[e]
        U.insert(UEdge(u, v, U.missing_color(u), e))
        n += 1
    return n


def prune_vizing_fans(chi: PartialColoring, U: SeparableCollection,
                      alpha: int, stats=None) -> _Round:
    """Make the fans of the alpha-primed u-edges pairwise vertex-disjoint.

    Collisions are profitable: each one either colors an edge outright
    (handing the collision vertex's reserved alpha to a fan edge) or rotates
    two uncolored slots onto a common vertex, producing a u-fan.
    """
    rnd = _Round(alpha, chi.g)
    multigraph = not chi.g.is_simple()
    builder = build_fan if not multigraph else build_multi_fan
    snapshot = U.uedges_with_color(alpha)
    for ue in snapshot:
        if ue not in U:
            continue
        u_i, v_i = ue.u, ue.v

        if multigraph:
            # a parallel pair of alpha-primed u-edges colors directly
            partner = U.find_component(v_i, alpha)
            if (partner is not None and partner.kind == "edge"
                    and partner is not ue
                    and {partner.u, partner.v} == {u_i, v_i}):
                U.delete(ue)
                U.delete(partner)
                chi.set_color(ue.e1, alpha)
                _note_event(stats, chi, U, "prune_parallel")
                continue

        other = rnd.vmap.get(u_i)
        if other is not None:
            # our center is a leaf of an earlier fan: rotate the uncolored
            # slot over to the edge into u_i and spend both alpha reservations
            fj = other.fan
            t = fj.leaves.index(u_i) + 1
            U.delete(ue)
            U.delete(other.uedge)
            rnd.drop(other)
            rotate_to(chi, fj, t)
            chi.set_color(fj.edges[t - 1], alpha)
            _note_event(stats, chi, U, "prune_center_leaf")
            continue

        fan = builder(chi, ue.e1, u_i, v_i, alpha, avoid=U)
        hit = -1
        for idx, leaf in enumerate(fan.leaves):
            if leaf in rnd.vmap:
                hit = idx
                break
        if hit < 0:
            rnd.add(_FanState(fan, ue, len(rnd.states)))
            continue
        w = fan.leaves[hit]
        other = rnd.vmap[w]
        fj = other.fan
        if w == fj.u:
            # collided with a fan center: it misses alpha, so the edge
            # (u_i, w) can take alpha once the uncolored slot rotates there
            U.delete(ue)
            U.delete(other.uedge)
            rnd.drop(other)
            rotate_to(chi, fan, hit + 1)
            chi.set_color(fan.edges[hit], alpha)
            _note_event(stats, chi, U, "prune_leaf_center")
        else:
            # leaf-leaf collision: park both uncolored slots at w -> u-fan
            s = fj.leaves.index(w) + 1
            U.delete(ue)
            U.delete(other.uedge)
            rnd.drop(other)
            rotate_to(chi, fan, hit + 1)
            rotate_to(chi, fj, s)
            beta = U.missing_color(w, forbid=alpha)
            U.insert(UFan(w, u_i, fj.u, beta, alpha,
                          fan.edges[hit], fj.edges[s - 1]))
            _note_event(stats, chi, U, "prune_ufan")
    if debug.enabled():
        _audit_round(chi, U, rnd, check_paths=False)
    return rnd


def reduce_u_edges(chi: PartialColoring, U: SeparableCollection,
                   rnd: _Round, stats=None) -> None:
    """Drive every surviving fan's chain to an ending or a collision."""
    alpha = rnd.alpha

    # trivial fans activate immediately
    for st in rnd.states:
        if st.alive and st.fan.trivial:
            U.delete(st.uedge)
            rnd.drop(st)
            gains = activate_fan(chi, st.fan)
            _remove_damaged(U, gains, rnd)
            _note_event(stats, chi, U, "activate_trivial")

    lam = rnd.alive_count()
    target = lam // 2
    m_alpha = chi.class_size[alpha]
    rounds = 0
    while rnd.alive_count() > target:
        rounds += 1
        if debug.enabled():
            assert rounds <= 6 * m_alpha / lam + 12, \
                "chain rounds exceeded the packing bound"
        for st in list(rnd.states):
            if st.alive:
                _update_path(chi, U, rnd, st, stats)
        if debug.enabled():
            _audit_round(chi, U, rnd, check_paths=True)


def _update_path(chi: PartialColoring, U: SeparableCollection,
                 rnd: _Round, st: _FanState, stats=None) -> None:
    alpha = rnd.alpha
    e = chi.slot_at(st.end, st.next_color)
    if e == -1:
        # chain already maximal (a previous merge uncolored our next edge)
        _activate_and_clean(chi, U, rnd, st, stats)
        return
    x = st.end
    y = chi.g.other(e, x)
    hit = rnd.S.get(e)
    if hit is not None:
        other, from_v = hit
        if other.fan is st.fan:
            raise AssertionError("alternating chain self-intersection")
        if from_v == x:
            _merge_same_orientation(chi, U, rnd, st, other, x, stats)
        else:
            _merge_opposite(chi, U, rnd, st, other, e, stats)
        return
    if rnd.pairs is not None:
        key = (x, y) if x < y else (y, x)
        ep = rnd.pairs.get(key)
        if ep is not None:
            _merge_parallel(chi, U, rnd, st, rnd.S[ep][0], e, ep, x, y, stats)
            return
        rnd.pairs[key] = e
    rnd.S[e] = (st, x)
    st.path.append(e)
    st.end = y
    ck = st.fan.chain_color
    st.next_color = alpha + ck - chi.color[e]
    if chi.slot_at(y, st.next_color) == -1:
        _activate_and_clean(chi, U, rnd, st, stats)


def _activate_and_clean(chi, U, rnd, st, stats=None) -> None:
    """Chain is maximal: activate the fan and clean up the fallout."""
    U.delete(st.uedge)
    rnd.drop(st)
    gains = activate_fan(chi, st.fan)
    _remove_damaged(U, gains, rnd)
    # a palette change at a vertex of another live fan invalidates that fan
    for v, _c in gains:
        hurt = rnd.vmap.get(v)
        if hurt is not None and hurt.alive:
            U.discard(hurt.uedge)
            rnd.drop(hurt)
    _note_event(stats, chi, U, "activate_maximal")


def _merge_same_orientation(chi, U, rnd, st, other, x, stats=None) -> None:
    """Both chains traverse the new edge from x: splice a u-fan at x.

    The predecessor edges (z, x) and (z', x) are uncolored; both truncated
    chains then end missing alpha at z and z', and x misses the color beta
    the first predecessor carried -- exactly a u-fan (x, z, z', beta, alpha).
    """
    if not st.path:
        raise AssertionError("same-orientation merge at a fan center")
    ez = st.path[-1]
    # the other chain passes through x: find the edge it entered on.
    # (Alternating paths visit each vertex at most once, so it is unique.)
    ezp = None
    for pe in other.path:
        frm = rnd.S[pe][1]
        if chi.g.other(pe, frm) == x:
            ezp = pe
            break
    if ezp is None:
        raise AssertionError("same-orientation merge without a predecessor edge")
    z = chi.g.other(ez, x)
    zp = chi.g.other(ezp, x)
    if z == zp:
        # parallel predecessors would need parallel prefix edges, which the
        # parallel-meet branch rules out one step earlier
        raise AssertionError("same-orientation merge with parallel predecessors")
    beta = chi.color[ez]
    U.delete(st.uedge)
    U.delete(other.uedge)
    rnd.drop(st)
    rnd.drop(other)
    chi.set_color(ez, 0)
    chi.set_color(ezp, 0)
    gains = activate_fan(chi, st.fan)
    _remove_damaged(U, gains, rnd)
    gains = activate_fan(chi, other.fan)
    _remove_damaged(U, gains, rnd)
    U.insert(UFan(x, z, zp, beta, rnd.alpha, ez, ezp))
    _note_event(stats, chi, U, "merge_same")


def _merge_parallel(chi, U, rnd, st, other, e, ep, x, y, stats=None) -> None:
    """Our next edge e is parallel to chain edge ep of another fan.

    This only happens when e carries our repeat color and ep carries the
    other chain's (crossed the opposite way): two alpha-edges at an endpoint
    or a shared alpha chain-in edge are impossible. Uncoloring both makes
    both chains maximal; after the two activations each endpoint's alpha
    chain-in edge has flipped away, so e itself can take alpha.
    """
    if other is st:
        raise AssertionError("chain met a parallel edge of its own prefix")
    alpha = rnd.alpha
    U.delete(st.uedge)
    U.delete(other.uedge)
    rnd.drop(st)
    rnd.drop(other)
    chi.set_color(e, 0)
    chi.set_color(ep, 0)
    gains = activate_fan(chi, st.fan)
    _remove_damaged(U, gains, rnd)
    gains = activate_fan(chi, other.fan)
    _remove_damaged(U, gains, rnd)
    chi.set_color(e, alpha)
    _remove_damaged(U, [(x, alpha), (y, alpha)], rnd)
    _note_event(stats, chi, U, "merge_parallel")


def _merge_opposite(chi, U, rnd, st, other, e, stats=None) -> None:
    """Chains traverse the shared edge in opposite directions: uncoloring it
    makes both chains maximal, and both fans activate."""
    U.delete(st.uedge)
    U.delete(other.uedge)
    rnd.drop(st)
    rnd.drop(other)
    chi.set_color(e, 0)
    gains = activate_fan(chi, st.fan)
    _remove_damaged(U, gains, rnd)
    gains = activate_fan(chi, other.fan)
    _remove_damaged(U, gains, rnd)
    _note_event(stats, chi, U, "merge_opposite")


# ---------------------------------------------------------------------------


def _note_event(stats, chi, U, event: str = "") -> None:
    """Checkpoint the yield potential after a completed primitive event."""
    if stats is not None:
        stats.note(event)


def construct_u_fans(chi: PartialColoring, stats: Optional[dict] = None):
    """Either color or fan-ify a constant fraction of the uncolored edges.

    Returns (colored_count, U): U is a separable collection holding the new
    u-fans plus leftover u-edges (callers usually drop the latter).
    """
    U = SeparableCollection(chi)
    lam = create_u_edges(chi, U)
    start_colored = chi.g.m - len(chi.uncolored)
    if stats is not None:
        stats["lambda"] = lam
        stats["potential_trace"] = []
        stats.setdefault("constructs", 0)
        stats["constructs"] += 1
    tracker = None
    if stats is not None or debug.enabled():
        tracker = _PotentialTracker(chi, U, start_colored, lam,
                                    None if stats is None
                                    else stats["potential_trace"])
    for alpha in range(1, chi.k + 1):
        if not U.uedges_by_color.get(alpha):
            continue
        rnd = prune_vizing_fans(chi, U, alpha, stats=tracker)
        reduce_u_edges(chi, U, rnd, stats=tracker)
    colored = (chi.g.m - len(chi.uncolored)) - start_colored
    if stats is not None:
        stats["colored"] = colored
        stats["ufans"] = U.n_fans
        stats["events"] = tracker.events
    if debug.enabled():
        U.check()
        assert colored + U.n_fans >= -(-lam // 18) or lam == 0, \
            f"yield {colored}+{U.n_fans} below ceil({lam}/18)"
    return colored, U


class _PotentialTracker:
    """Asserts the construction potential never decreases across events."""

    def __init__(self, chi, U, start_colored, lam, trace):
        self.chi = chi
        self.U = U
        self.start_colored = start_colored
        self.trace = trace
        self.events = {}
        self.last = 3 * (0 + 2 * 0) + lam
        if trace is not None:
            trace.append(self.last)

    def note(self, event: str = "") -> None:
        if event:
            self.events[event] = self.events.get(event, 0) + 1
        colored = (self.chi.g.m - len(self.chi.uncolored)) - self.start_colored
        value = 3 * (self.U.n_fans + 2 * colored) + self.U.n_edges
        if value < self.last:
            raise AssertionError(
                f"construction potential dropped {self.last} -> {value}")
        self.last = value
        if self.trace is not None:
            self.trace.append(value)


# ---------------------------------------------------------------------------
# debug audits


def _audit_round(chi, U, rnd, check_paths: bool) -> None:
    U.check()
    alive = [st for st in rnd.states if st.alive]
    assert len(alive) == len(U.uedges_by_color.get(rnd.alpha, {})), \
        "fan registry out of sync with alpha-primed u-edges"
    seen_v = {}
    for st in alive:
        fan = st.fan
        for v in [fan.u] + fan.leaves:
            assert v not in seen_v, f"fans share vertex {v}"
            seen_v[v] = st
        if hasattr(fan, "csets"):
            leaf_colors = [(lf, c) for lf, cs in zip(fan.leaves, fan.csets)
                           for c in cs]
        else:
            leaf_colors = zip(fan.leaves, fan.colors)
        for leaf, c in leaf_colors:
            assert chi.is_missing(leaf, c), "fan leaf color no longer missing"
        assert chi.is_missing(fan.u, fan.alpha)
    if not check_paths:
        return
    union = {}
    for st in alive:
        # prefix must match a fresh walk of the current chain
        ck = st.fan.chain_color
        edges, _end, _ = chi.walk_alternating(st.fan.u, st.fan.alpha, ck,
                                              limit=len(st.path))
        assert edges == st.path, "stored chain prefix diverged from coloring"
        for e in st.path:
            assert e not in union, "chain prefixes not edge-disjoint"
            union[e] = st
    assert set(union) == set(rnd.S), "S drifted from the union of prefixes"
    if rnd.pairs is not None:
        keys = {}
        for e in rnd.S:
            u, v = chi.g.src[e], chi.g.dst[e]
            key = (u, v) if u < v else (v, u)
            assert key not in keys, "parallel edges across chain prefixes"
            keys[key] = e
        assert keys == rnd.pairs, "pair index drifted from S"
