"""Static and dynamic topologies, their generators and expansion analysis."""

from mobile_gossip.graph.analysis import (
    diameter,
    graph_stats,
    max_degree,
    vertex_expansion_estimate,
    vertex_expansion_exact,
)
from mobile_gossip.graph.generators import GRAPH_KINDS, generate, two_star_centers, validate_stability
from mobile_gossip.graph.io import load_topology, parse_tau, save_topology, topology_from_dict, topology_to_dict
from mobile_gossip.graph.models import (
    INFINITY,
    DynamicTopology,
    GraphStats,
    Snapshot,
    StabilityReport,
    StaticTopology,
)

__all__ = [
    "INFINITY",
    "DynamicTopology",
    "GraphStats",
    "Snapshot",
    "StabilityReport",
    "StaticTopology",
    "GRAPH_KINDS",
    "diameter",
    "generate",
    "graph_stats",
    "load_topology",
    "max_degree",
    "parse_tau",
    "save_topology",
    "topology_from_dict",
    "topology_to_dict",
    "two_star_centers",
    "validate_stability",
    "vertex_expansion_estimate",
    "vertex_expansion_exact",
]
