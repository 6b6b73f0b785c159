"""
Vertex expansion, maximum degree and diameter.

alpha(G) = min over non-empty S with |S| <= n/2 of |boundary(S)| / |S|, where
boundary(S) is the set of nodes outside S adjacent to some node of S.
"""

from __future__ import annotations

import logging
from fractions import Fraction

import networkx as nx
import numpy as np

from mobile_gossip.config import DEFAULT_EXPANSION_TRIALS, EXACT_EXPANSION_MAX_N
from mobile_gossip.errors import DisconnectedGraphError, SizeLimitError
from mobile_gossip.graph.models import DynamicTopology, GraphStats, StaticTopology

logger = logging.getLogger(__name__)


def _require_connected(g: StaticTopology) -> None:
    if not g.is_connected:
        raise DisconnectedGraphError(f"Graph on {g.n} nodes is not connected")


def vertex_expansion_exact(g: StaticTopology) -> Fraction:
    """Exact alpha by enumerating every subset as a bitmask (n <= 20)."""
    _require_connected(g)
    if g.n > EXACT_EXPANSION_MAX_N:
        raise SizeLimitError(
            f"Exact expansion is limited to n <= {EXACT_EXPANSION_MAX_N}, got n={g.n}; "
            "use vertex_expansion_estimate instead"
        )

    n = g.n
    neighbour_mask = np.zeros(n, dtype=np.uint32)
    for u, nbrs in enumerate(g.adjacency):
        for v in nbrs:
            neighbour_mask[u] |= np.uint32(1 << v)

    # reach[mask] = union of neighbourhoods of the members of mask
    masks = np.arange(1 << n, dtype=np.uint32)
    reach = np.zeros(1 << n, dtype=np.uint32)
    for i in range(n):
        lo, hi = 1 << i, 1 << (i + 1)
        reach[lo:hi] = reach[0:lo] | neighbour_mask[i]

    sizes = np.bitwise_count(masks)
    boundary = np.bitwise_count(reach & ~masks)

    best: Fraction | None = None
    for size in range(1, n // 2 + 1):
        smallest = int(boundary[sizes == size].min())
        candidate = Fraction(smallest, size)
        if best is None or candidate < best:
            best = candidate
    return best


def _boundary_size(g: StaticTopology, subset: set[int]) -> int:
    outside: set[int] = set()
    for u in subset:
        outside.update(g.adjacency[u])
    return len(outside - subset)


def _bfs_grown_subset(g: StaticTopology, size: int, rng: np.random.Generator) -> set[int]:
    start = int(rng.integers(g.n))
    subset = {start}
    frontier = set(g.adjacency[start])
    while len(subset) < size and frontier:
        pick = sorted(frontier)[int(rng.integers(len(frontier)))]
        subset.add(pick)
        frontier.discard(pick)
        frontier.update(v for v in g.adjacency[pick] if v not in subset)
    return subset


def vertex_expansion_estimate(
        g: StaticTopology,
        trials: int = DEFAULT_EXPANSION_TRIALS,
        rng_seed: int = 0,
) -> float:
    """
    Sampled UPPER bound on alpha: the minimum ratio over sampled subsets.
    Trials alternate between BFS-grown subsets and uniformly random subsets.
    """
    _require_connected(g)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")

    rng = np.random.default_rng(rng_seed)
    half = g.n // 2
    best = float("inf")
    for trial in range(trials):
        size = int(rng.integers(1, half + 1))
        if trial % 2 == 0:
            subset = _bfs_grown_subset(g, size, rng)
        else:
            subset = {int(x) for x in rng.choice(g.n, size=size, replace=False)}
        best = min(best, _boundary_size(g, subset) / len(subset))
    return best


def max_degree(g: StaticTopology) -> int:
    return max(len(nbrs) for nbrs in g.adjacency)


def diameter(g: StaticTopology) -> int:
    _require_connected(g)
    return int(nx.diameter(g.to_networkx()))


def graph_stats(
        topology: StaticTopology | DynamicTopology,
        trials: int = DEFAULT_EXPANSION_TRIALS,
        rng_seed: int = 0,
) -> GraphStats:
    """
    Expansion, degree and diameter of a static graph, or min-alpha / max-delta
    over the materialized snapshots of a dynamic one (diameter undefined).
    """
    if isinstance(topology, DynamicTopology):
        if topology.is_static or len(topology.snapshots) == 1:
            return graph_stats(topology.snapshots[0].topology, trials, rng_seed)
        per_snapshot = [graph_stats(s.topology, trials, rng_seed) for s in topology.snapshots]
        return GraphStats(
            alpha=min(s.alpha for s in per_snapshot),
            delta=max(s.delta for s in per_snapshot),
            diameter=None,
            alpha_is_estimate=any(s.alpha_is_estimate for s in per_snapshot),
        )

    if topology.n <= EXACT_EXPANSION_MAX_N:
        alpha: Fraction | float = vertex_expansion_exact(topology)
        estimated = False
    else:
        logger.info("n=%d above exact cutoff, estimating expansion with %d trials", topology.n, trials)
        alpha = vertex_expansion_estimate(topology, trials, rng_seed)
        estimated = True
    return GraphStats(
        alpha=alpha,
        delta=max_degree(topology),
        diameter=diameter(topology),
        alpha_is_estimate=estimated,
    )
