"""Near-linear randomized edge coloring.

Core entry points:
  color_delta_plus_one  -- (Delta+1)-edge coloring of a simple graph
  color_delta_plus_mu   -- (Delta+mu)-edge coloring of a multigraph
  shannon_color         -- floor(3*Delta/2)-edge coloring of a multigraph
  bipartite_delta_color -- Delta-edge coloring of a bipartite graph
  classic_vizing        -- O(m*n) per-edge baseline
  greedy_2delta         -- first-fit (2*Delta-1) baseline
"""

from .graphs import Graph, parse_graph, serialize_graph, generate, euler_partition
from .coloring import PartialColoring, UNCOLORED
from .collection import SeparableCollection, UEdge, UFan
from .vizing import classic_vizing, greedy_2delta
from .driver import color_delta_plus_one, color_delta_plus_mu
from .bipartite import bipartite_delta_color
from .shannon import shannon_color
from .report import RunReport, serialize_coloring, parse_coloring, validate

__version__ = "0.1.0"

__all__ = [
    "Graph", "parse_graph", "serialize_graph", "generate", "euler_partition",
    "PartialColoring", "UNCOLORED",
    "SeparableCollection", "UEdge", "UFan",
    "classic_vizing", "greedy_2delta",
    "color_delta_plus_one", "color_delta_plus_mu", "bipartite_delta_color",
    "shannon_color",
    "RunReport", "serialize_coloring", "parse_coloring", "validate",
]
