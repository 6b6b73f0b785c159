"""Immutable topology types: static snapshots and tau-stable sequences of them."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, NamedTuple

import networkx as nx

from mobile_gossip.errors import DisconnectedGraphError, GraphError

INFINITY = math.inf

Edge = tuple[int, int]


def _normalise_edges(n: int, edges: Iterable[Iterable[int]]) -> frozenset[Edge]:
    out: set[Edge] = set()
    for raw in edges:
        u, v = (int(x) for x in raw)
        if u == v:
            raise GraphError(f"Self-loop on node {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"Edge ({u}, {v}) outside node range 0..{n - 1}")
        edge = (u, v) if u < v else (v, u)
        if edge in out:
            raise GraphError(f"Duplicate edge {edge}")
        out.add(edge)
    return frozenset(out)


@dataclass(frozen=True)
class StaticTopology:
    """Undirected simple graph over nodes 0..n-1.

    Structural invariants (range, no self-loops, no duplicates) are enforced on
    construction. Connectivity is checked by generators, the loader and the
    analysis functions, so a disconnected instance can still be represented.
    """
    n: int
    edges: frozenset[Edge]

    def __init__(self, n: int, edges: Iterable[Iterable[int]]) -> None:
        if n < 2:
            raise GraphError(f"Node count must be >= 2, got {n}")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", _normalise_edges(int(n), edges))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def is_connected(self) -> bool:
        return nx.is_connected(self.to_networkx())

    def degree(self, node: int) -> int:
        return len(self.adjacency[node])

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "StaticTopology":
        mapping = {node: i for i, node in enumerate(sorted(g.nodes()))}
        return cls(len(mapping), ((mapping[u], mapping[v]) for u, v in g.edges()))

    def require_connected(self) -> "StaticTopology":
        if not self.is_connected:
            raise DisconnectedGraphError(f"Graph on {self.n} nodes is not connected")
        return self

    def __repr__(self) -> str:
        return f"StaticTopology(n={self.n}, edges={len(self.edges)})"


class Snapshot(NamedTuple):
    from_round: int
    topology: StaticTopology


@dataclass
class DynamicTopology:
    """A sequence of snapshots, each active from its ``from_round`` on.

    When ``factory`` is set, snapshot j (0-based) is built on demand as
    ``factory(j)`` and becomes active at round ``j * tau + 1``. The factory
    must be deterministic so lazily built sequences replay identically.
    """
    n: int
    tau: float
    snapshots: list[Snapshot] = field(default_factory=list)
    factory: Callable[[int], StaticTopology] | None = field(default=None, repr=False, compare=False)

    @classmethod
    def static(cls, topology: StaticTopology) -> "DynamicTopology":
        return cls(n=topology.n, tau=INFINITY, snapshots=[Snapshot(1, topology)])

    @property
    def is_static(self) -> bool:
        return self.tau == INFINITY

    def materialize(self, up_to_round: int) -> None:
        """Build lazily generated snapshots covering rounds 1..up_to_round."""
        if self.factory is None:
            return
        needed = (up_to_round - 1) // int(self.tau) + 1
        while len(self.snapshots) < needed:
            j = len(self.snapshots)
            self.snapshots.append(Snapshot(j * int(self.tau) + 1, self.factory(j)))

    def topology_at(self, round_: int) -> StaticTopology:
        """Snapshot active in round ``round_`` (1-based)."""
        if self.factory is not None:
            self.materialize(round_)
            return self.snapshots[(round_ - 1) // int(self.tau)].topology
        active = self.snapshots[0].topology
        for snap in self.snapshots:
            if snap.from_round > round_:
                break
            active = snap.topology
        return active


@dataclass(frozen=True)
class GraphStats:
    alpha: Fraction | float
    delta: int
    diameter: int | None
    alpha_is_estimate: bool = False

    def describe(self) -> str:
        alpha = float(self.alpha)
        label = " (estimate)" if self.alpha_is_estimate else ""
        diameter = "undefined" if self.diameter is None else str(self.diameter)
        return f"alpha={alpha:g}{label} delta={self.delta} diameter={diameter}"


@dataclass
class StabilityReport:
    ok: bool
    reasons: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok
