"""Generators for the graph families used by the experiments."""
from __future__ import annotations

import logging
from typing import Any, Callable

import networkx as nx
import numpy as np

from mobile_gossip.config import GENERATION_RETRY_CAP
from mobile_gossip.errors import ConfigError, GenerationError
from mobile_gossip.graph.models import INFINITY, DynamicTopology, StabilityReport, StaticTopology

logger = logging.getLogger(__name__)

GRAPH_KINDS = [
    "complete",
    "ring",
    "star",
    "path",
    "two_stars",
    "random_connected",
    "random_regular",
    "fresh_random_each_tau",
]


def _require(params: dict[str, Any], *names: str) -> None:
    missing = [name for name in names if params.get(name) is None]
    if missing:
        raise ConfigError([f"graph parameter '{name}' is required" for name in missing])


def _node_count(params: dict[str, Any], minimum: int = 2) -> int:
    _require(params, "n")
    n = int(params["n"])
    if n < minimum:
        raise ConfigError(f"n must be >= {minimum}, got {n}")
    return n


def _probability(params: dict[str, Any]) -> float:
    _require(params, "p")
    p = float(params["p"])
    if not 0.0 < p <= 1.0:
        raise ConfigError(f"p must be in (0, 1], got {p}")
    return p


def _seed_int(rng_seed: int, *keys: int) -> int:
    state = np.random.SeedSequence([int(rng_seed), *keys]).generate_state(1)
    return int(state[0])


def _connected_or_retry(build: Callable[[int], nx.Graph], seed: int, what: str) -> StaticTopology:
    """Draw graphs from ``build(seed_i)`` until one is connected."""
    for attempt in range(GENERATION_RETRY_CAP):
        g = build(_seed_int(seed, attempt))
        if g.number_of_nodes() >= 2 and nx.is_connected(g):
            if attempt:
                logger.debug("%s connected after %d retries", what, attempt)
            return StaticTopology.from_networkx(g)
    raise GenerationError(f"{what} not connected after {GENERATION_RETRY_CAP} attempts")


def two_star_centers(delta: int) -> tuple[int, int]:
    """Node ids of the two centers produced by ``two_stars``."""
    return 0, 1


def _two_stars(params: dict[str, Any], rng_seed: int) -> StaticTopology:
    _require(params, "delta")
    delta = int(params["delta"])
    if delta < 2:
        raise ConfigError(f"two_stars needs delta >= 2, got {delta}")
    a, b = two_star_centers(delta)
    edges = [(a, b)]
    edges += [(a, 2 + i) for i in range(delta)]
    edges += [(b, 2 + delta + i) for i in range(delta)]
    return StaticTopology(2 * delta + 2, edges)


def _complete(params: dict[str, Any], rng_seed: int) -> StaticTopology:
    return StaticTopology.from_networkx(nx.complete_graph(_node_count(params)))


def _ring(params: dict[str, Any], rng_seed: int) -> StaticTopology:
    n = _node_count(params, minimum=3)
    return StaticTopology.from_networkx(nx.cycle_graph(n))


def _star(params: dict[str, Any], rng_seed: int) -> StaticTopology:
    n = _node_count(params)
    return StaticTopology.from_networkx(nx.star_graph(n - 1))


def _path(params: dict[str, Any], rng_seed: int) -> StaticTopology:
    return StaticTopology.from_networkx(nx.path_graph(_node_count(params)))


def _random_connected(params: dict[str, Any], rng_seed: int) -> StaticTopology:
    n, p = _node_count(params), _probability(params)
    return _connected_or_retry(lambda s: nx.gnp_random_graph(n, p, seed=s), rng_seed, f"G({n}, {p})")


def _random_regular(params: dict[str, Any], rng_seed: int) -> StaticTopology:
    n = _node_count(params)
    _require(params, "d")
    d = int(params["d"])
    if not 1 <= d < n or (n * d) % 2:
        raise ConfigError(f"random_regular needs 1 <= d < n and n*d even, got n={n}, d={d}")
    return _connected_or_retry(
        lambda s: nx.random_regular_graph(d, n, seed=s), rng_seed, f"{d}-regular graph on {n} nodes"
    )


_STATIC_GENERATORS: dict[str, Callable[[dict[str, Any], int], StaticTopology]] = {
    "complete": _complete,
    "ring": _ring,
    "star": _star,
    "path": _path,
    "two_stars": _two_stars,
    "random_connected": _random_connected,
    "random_regular": _random_regular,
}


def _fresh_random_each_tau(params: dict[str, Any], rng_seed: int) -> DynamicTopology:
    n, p = _node_count(params), _probability(params)
    _require(params, "tau")
    tau = params["tau"]
    if tau == INFINITY or int(tau) < 1:
        raise ConfigError(f"fresh_random_each_tau needs a finite tau >= 1, got {tau}")
    tau = int(tau)

    def factory(j: int) -> StaticTopology:
        return _connected_or_retry(
            lambda s: nx.gnp_random_graph(n, p, seed=s), _seed_int(rng_seed, j), f"G({n}, {p}) snapshot {j}"
        )

    topology = DynamicTopology(n=n, tau=tau, factory=factory)
    horizon = params.get("horizon")
    if horizon:
        topology.materialize(int(horizon) * tau)
    return topology


def generate(kind: str, params: dict[str, Any], rng_seed: int = 0) -> DynamicTopology:
    """
    Build a topology of the given family. Static kinds yield one snapshot with
    tau = INFINITY; ``fresh_random_each_tau`` yields an independent connected
    G(n, p) every tau rounds, built lazily and deterministically from the seed.
    """
    if kind == "fresh_random_each_tau":
        return _fresh_random_each_tau(params, rng_seed)
    build = _STATIC_GENERATORS.get(kind)
    if build is None:
        raise ConfigError(f"Unknown graph kind '{kind}'. Choose from: {GRAPH_KINDS}")
    return DynamicTopology.static(build(params, rng_seed).require_connected())


def validate_stability(d: DynamicTopology) -> StabilityReport:
    """True (with no reasons) iff snapshot starts are tau apart and every snapshot is connected."""
    reasons: list[str] = []
    if not d.snapshots:
        reasons.append("no snapshots")
        return StabilityReport(False, reasons)
    if d.snapshots[0].from_round != 1:
        reasons.append(f"first snapshot starts at round {d.snapshots[0].from_round}, expected 1")
    if d.tau == INFINITY and len(d.snapshots) != 1:
        reasons.append(f"tau is infinite but there are {len(d.snapshots)} snapshots")
    for prev, cur in zip(d.snapshots, d.snapshots[1:]):
        gap = cur.from_round - prev.from_round
        if gap <= 0:
            reasons.append(f"snapshot rounds not increasing ({prev.from_round} -> {cur.from_round})")
        elif gap < d.tau:
            reasons.append(f"rounds {prev.from_round} and {cur.from_round} closer than tau={d.tau:g}")
    for snap in d.snapshots:
        if snap.topology.n != d.n:
            reasons.append(f"snapshot at round {snap.from_round} has n={snap.topology.n}, expected {d.n}")
        elif not snap.topology.is_connected:
            reasons.append(f"snapshot at round {snap.from_round} is disconnected")
    return StabilityReport(not reasons, reasons)
