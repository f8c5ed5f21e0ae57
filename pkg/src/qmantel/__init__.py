"""Q-index (signless Laplacian spectral radius) tools for non-bipartite triangle-free graphs."""

from .constructions import (
    blow_up,
    c5_blowup,
    c5_star,
    complete_bipartite,
    cycle,
    order_extremal,
    size_extremal,
    star,
    subdivided_complete_bipartite,
)
from .graph import (
    Graph,
    from_edge_list,
    is_bipartite,
    is_connected,
    is_triangle_free,
    parse_graph6,
    shortest_odd_cycle_length,
    to_graph6,
)
from .spectral import adjacency_spectral_radius, q_index, q_matrix

__all__ = [
    "Graph",
    "adjacency_spectral_radius",
    "blow_up",
    "c5_blowup",
    "c5_star",
    "complete_bipartite",
    "cycle",
    "from_edge_list",
    "is_bipartite",
    "is_connected",
    "is_triangle_free",
    "order_extremal",
    "parse_graph6",
    "q_index",
    "q_matrix",
    "shortest_odd_cycle_length",
    "size_extremal",
    "star",
    "subdivided_complete_bipartite",
    "to_graph6",
]

__version__ = "0.1.0"
