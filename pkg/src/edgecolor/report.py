"""Run reports, the coloring file format, and the standalone validator.

Coloring files carry a `colors <k>` header (the palette bound of the run)
followed by one `edge_id u v color` line per edge, with -1 marking an
uncolored edge. The format is bit-exact for a fixed (input, algorithm, seed).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .coloring import PartialColoring
from .graphs import Graph

__all__ = ["RunReport", "Verdict", "serialize_coloring", "parse_coloring",
           "validate"]


@dataclass
class RunReport:
    algorithm: str
    n: int
    m: int
    delta: int
    mu: int
    colors_used: int
    uncolored_remaining: int
    wall_time_ns: int
    rng_seed: int
    counters: dict = field(default_factory=dict)

    @classmethod
    def from_run(cls, algorithm: str, g: Graph, chi: PartialColoring,
                 seed: int, wall_time_ns: int,
                 stats: Optional[dict] = None) -> "RunReport":
        counters = {}
        for key, val in (stats or {}).items():
            if isinstance(val, (int, float)):
                counters[key] = val
            elif key == "events":
                for name, cnt in val.items():
                    counters[f"event_{name}"] = cnt
        return cls(algorithm=algorithm, n=g.n, m=g.m, delta=g.delta, mu=g.mu,
                   colors_used=chi.colors_used(),
                   uncolored_remaining=len(chi.uncolored),
                   wall_time_ns=wall_time_ns, rng_seed=seed,
                   counters=counters)

    def to_json(self) -> str:
        return json.dumps(self.__dict__, sort_keys=True)


def serialize_coloring(g: Graph, chi: PartialColoring) -> str:
    """`colors <k>` header plus one `edge_id u v color` line per edge."""
    lines = [f"colors {chi.k}"]
    for e in range(g.m):
        c = chi.color[e]
        lines.append(f"{e} {g.src[e]} {g.dst[e]} {c if c else -1}")
    lines.append("")
    return "\n".join(lines)


def parse_coloring(text: str):
    """Returns (palette bound k, list of (edge_id, u, v, color))."""
    k = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if k is None:
            if len(parts) != 2 or parts[0] != "colors":
                raise ValueError(f"line {lineno}: expected 'colors <k>' header")
            k = int(parts[1])
            continue
        if len(parts) != 4:
            raise ValueError(f"line {lineno}: expected 'edge_id u v color'")
        rows.append(tuple(int(p) for p in parts))
    if k is None:
        raise ValueError("missing 'colors <k>' header")
    return k, rows


@dataclass
class Verdict:
    proper: bool
    complete: bool
    colors_used: int
    palette_bound_ok: bool
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.proper and self.palette_bound_ok


def validate(g: Graph, coloring_text: str) -> Verdict:
    """O(m) audit of a coloring file against its graph.

    Raises ValueError on format mismatches (wrong edge ids or endpoints);
    properness and palette problems are reported in the verdict instead.
    """
    k, rows = parse_coloring(coloring_text)
    if len(rows) != g.m:
        raise ValueError(f"coloring lists {len(rows)} edges, graph has {g.m}")
    colors = [0] * g.m
    seen = [False] * g.m
    for eid, u, v, c in rows:
        if not 0 <= eid < g.m or seen[eid]:
            raise ValueError(f"bad or repeated edge id {eid}")
        if {u, v} != {g.src[eid], g.dst[eid]}:
            raise ValueError(f"edge {eid} endpoints {u},{v} do not match graph")
        seen[eid] = True
        colors[eid] = 0 if c == -1 else c
    violations = []
    palette_ok = True
    at = {}
    used = set()
    uncolored = 0
    for e in range(g.m):
        c = colors[e]
        if c == 0:
            uncolored += 1
            continue
        if not 1 <= c <= k:
            palette_ok = False
            violations.append(("palette", e, c))
            continue
        used.add(c)
        for v in (g.src[e], g.dst[e]):
            if (v, c) in at:
                violations.append(("conflict", v, c, at[(v, c)], e))
            else:
                at[(v, c)] = e
    proper = not any(v[0] == "conflict" for v in violations)
    return Verdict(proper=proper, complete=uncolored == 0,
                   colors_used=len(used), palette_bound_ok=palette_ok,
                   violations=violations)
