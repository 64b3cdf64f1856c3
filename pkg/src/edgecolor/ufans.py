"""Coloring off u-fans via random re-priming.

`color_u_fans` repeatedly picks the two least common colors (alpha, beta),
re-primes a batch of u-fans onto that pair by flipping the alternating paths
that separate their reserved colors from (alpha, beta) (`prime_u_fans`), and
then activates the primed batch (`activate_u_fans`): a primed fan has at
least one leaf whose {alpha,beta}-path avoids the center, so flipping it
frees alpha at that leaf and the leaf edge takes alpha. Priming succeeds on
a constant fraction of samples because few edges wear the two least common
colors, so the flip paths are short on average and rarely touch the batch.
"""

from __future__ import annotations

import random
from typing import Optional

from . import debug
from .collection import SeparableCollection, UFan
from .coloring import PartialColoring

__all__ = ["PrimedSet", "color_u_fans", "prime_u_fans", "activate_u_fans"]


class PrimedSet:
    """Insertion-ordered batch of vertex-disjoint {alpha,beta}-primed fans."""

    def __init__(self, alpha: int, beta: int):
        self.alpha = alpha
        self.beta = beta
        self.fans = []      # insertion order; eviction leaves tombstones
        self.member = set()  # ids of live fans
        self.vertices = set()

    def __len__(self):
        return len(self.member)

    def add(self, f: UFan) -> None:
        self.fans.append(f)
        self.member.add(id(f))
        self.vertices.update((f.u, f.v, f.w))

    def evict(self, f: UFan) -> None:
        if id(f) in self.member:
            self.member.remove(id(f))
            self.vertices.difference_update((f.u, f.v, f.w))

    def touches(self, x: int) -> bool:
        return x in self.vertices


def _evict_damaged(chi: PartialColoring, U: SeparableCollection, gains,
                   phi: Optional[PrimedSet] = None) -> int:
    removed = 0
    for x, c in gains:
        g = U.find_component(x, c)
        if g is not None:
            U.delete(g)
            removed += 1
            if phi is not None:
                phi.evict(g)
    return removed


def _walk_budgeted(chi: PartialColoring, x: int, a: int, b: int,
                   budget: float):
    """Maximal {a,b}-path from x, or None if it exceeds the running budget."""
    if a == b:  # degenerate primer: nothing separates the colors
        return [], x
    edges, end, trunc = chi.walk_alternating(x, a, b, limit=int(budget) + 1)
    if trunc or len(edges) > budget:
        return None
    return edges, end


def prime_u_fans(chi: PartialColoring, U: SeparableCollection,
                 alpha: int, beta: int, rng: random.Random,
                 lam: int, stats: Optional[dict] = None) -> PrimedSet:
    """Fill a batch of ceil(lam/(48*Delta)) fans re-primed onto {alpha,beta}."""
    phi = PrimedSet(alpha, beta)
    delta = max(1, chi.g.delta)
    target = max(1, -(-lam // (48 * delta)))
    budget = 128 * chi.g.m / max(1, lam)
    watchdog = 64 * target * 4
    entry_fans = U.n_fans
    ab_edges0 = chi.class_size[alpha] + chi.class_size[beta]
    iters = 0
    successes = 0
    restarts = 0
    while len(phi) < target:
        if U.n_fans - len(phi) <= 0:
            break  # nothing left to sample outside the batch
        if iters >= watchdog:
            restarts += 1
            iters = 0
            if restarts > 8:
                break
            rng = random.Random(rng.getrandbits(64))
        iters += 1
        if stats is not None:
            stats["prime_iterations"] = stats.get("prime_iterations", 0) + 1
        f = U.sample_uniform(rng)
        u, v, w = f.u, f.v, f.w
        gamma, delta_c = f.alpha, f.beta
        if gamma == beta or delta_c == alpha:
            a1, b1 = beta, alpha
        else:
            a1, b1 = alpha, beta
        # walk the re-priming paths under a shared cost budget
        rem = budget
        pu = _walk_budgeted(chi, u, a1, gamma, rem)
        if pu is None:
            continue
        rem -= len(pu[0])
        pv = _walk_budgeted(chi, v, b1, delta_c, rem)
        if pv is None:
            continue
        rem -= len(pv[0])
        shared = b1 != delta_c and pv[1] == w  # one path serves both leaves
        if shared:
            pw = (list(reversed(pv[0])), v)
        else:
            pw = _walk_budgeted(chi, w, b1, delta_c, rem)
            if pw is None:
                continue
        ends = {pu[1], pv[1], pw[1], u, v, w}
        if any(phi.touches(x) for x in ends):
            continue
        # success: flip, evict fallout, insert the re-primed fan
        successes += 1
        if stats is not None:
            stats["prime_successes"] = stats.get("prime_successes", 0) + 1
            stats["flip_length"] = (stats.get("flip_length", 0) + len(pu[0])
                                    + len(pv[0]) + (0 if shared else len(pw[0])))
        U.delete(f)
        gains = []
        if pu[0]:
            gains += chi.flip_with_damage(pu[0], a1, gamma, u, pu[1])
        if pv[0]:
            gains += chi.flip_with_damage(pv[0], b1, delta_c, v, pv[1])
        if pw[0] and not shared:
            gains += chi.flip_with_damage(pw[0], b1, delta_c, w, pw[1])
        damaged = _evict_damaged(chi, U, gains)
        # an empty path means the fan vertex already missed its new primer,
        # which some unrelated component may have reserved meanwhile
        for x, c in ((u, a1), (v, b1), (w, b1)):
            damaged += _evict_damaged(chi, U, [(x, c)])
        if debug.enabled():
            assert damaged <= 6, f"priming flip damaged {damaged} components"
        nf = UFan(u, v, w, a1, b1, f.e1, f.e2)
        U.insert(nf)
        phi.add(nf)
        if debug.enabled():
            # exact accounting: re-priming is count-neutral, damage <= 6/success
            assert U.n_fans >= entry_fans - 6 * successes, \
                "collection shrank faster than the damage bound allows"
            # the 1/(2*Delta) erosion bound needs the batch target to be
            # proportional to the pool (tiny pools hit the ceil floor)
            if entry_fans >= 96 * delta:
                assert U.n_fans >= (1 - 1 / (2 * delta)) * entry_fans, \
                    "collection shrank too fast while priming"
            ab = chi.class_size[alpha] + chi.class_size[beta]
            assert ab <= ab_edges0 + 6 * successes, \
                "too many edges wearing the working colors"
    if stats is not None:
        stats["prime_restarts"] = stats.get("prime_restarts", 0) + restarts
    return phi


def activate_u_fans(chi: PartialColoring, U: SeparableCollection,
                    phi: PrimedSet, stats: Optional[dict] = None) -> int:
    """Color one leaf edge of every surviving primed fan with alpha."""
    alpha, beta = phi.alpha, phi.beta
    size0 = len(phi)
    colored = 0
    flipped = set() if debug.enabled() else None
    for f in phi.fans:  # lowest handle first
        if id(f) not in phi.member:
            continue
        phi.evict(f)
        U.delete(f)
        # the fan's own primer may be the swapped orientation of (alpha, beta)
        fa, fb = f.alpha, f.beta
        pv = chi.walk_alternating(f.v, fa, fb)
        pw = chi.walk_alternating(f.w, fa, fb)
        usable = [(p, leaf, e) for p, leaf, e in
                  ((pv, f.v, f.e1), (pw, f.w, f.e2)) if p[1] != f.u]
        if not usable:
            raise AssertionError("both leaf paths end at the u-fan center")
        usable.sort(key=lambda t: len(t[0][0]))
        (path, end, _), leaf, edge = usable[0]
        gains = chi.flip_with_damage(path, fa, fb, leaf, end)
        if flipped is not None and path:
            key = (min(leaf, end), max(leaf, end))
            assert key not in flipped, "maximal path flipped twice"
            flipped.add(key)
        chi.set_color(edge, fa)
        colored += 1
        _evict_damaged(chi, U, gains + [(f.u, fa), (leaf, fa)], phi)
    if debug.enabled():
        assert colored >= -(-size0 // 2), \
            f"activation colored {colored} < ceil({size0}/2)"
    if stats is not None:
        stats["activations"] = stats.get("activations", 0) + colored
    return colored


def color_u_fans(chi: PartialColoring, U: SeparableCollection,
                 rng: random.Random, stats: Optional[dict] = None) -> int:
    """Color a constant fraction of the u-fans in U (which must be all fans)."""
    if U.n_edges:
        raise ValueError("collection must contain u-fans only")
    lam = U.n_fans
    if lam == 0:
        return 0
    total = 0
    min_fans = lam
    for _ in range(max(1, chi.g.delta // 2)):
        if U.n_fans == 0:
            break
        alpha, beta = chi.least_common_colors(2)
        phi = prime_u_fans(chi, U, alpha, beta, rng, lam, stats=stats)
        total += activate_u_fans(chi, U, phi, stats=stats)
        # damage only erodes the pool slowly: colored progress plus survivors
        # stays above half the starting count
        min_fans = min(min_fans, total + U.n_fans)
    if stats is not None:
        stats["ufan_lambda"] = lam
        stats["ufan_colored"] = total
        stats["ufan_min_survivors"] = min_fans
    return total
