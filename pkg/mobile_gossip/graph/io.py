"""
Graph JSON format:

    {"n": int, "tau": int | "inf", "snapshots": [{"from_round": int, "edges": [[u, v], ...]}]}
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from mobile_gossip.errors import GraphError
from mobile_gossip.graph.generators import validate_stability
from mobile_gossip.graph.models import INFINITY, DynamicTopology, Snapshot, StaticTopology


def parse_tau(value: Any) -> float:
    if value in ("inf", "INF", "infinity", None) or value == INFINITY:
        return INFINITY
    tau = int(value)
    if tau < 1:
        raise GraphError(f"tau must be >= 1 or 'inf', got {value}")
    return tau


def format_tau(tau: float) -> int | str:
    return "inf" if tau == INFINITY else int(tau)


def topology_to_dict(d: DynamicTopology) -> dict[str, Any]:
    return {
        "n": d.n,
        "tau": format_tau(d.tau),
        "snapshots": [
            {"from_round": s.from_round, "edges": [list(e) for e in sorted(s.topology.edges)]}
            for s in d.snapshots
        ],
    }


def topology_from_dict(data: dict[str, Any]) -> DynamicTopology:
    """Build a topology from its JSON form, enforcing every type invariant."""
    try:
        n = int(data["n"])
        tau = parse_tau(data.get("tau", "inf"))
        snapshots = [
            Snapshot(int(s["from_round"]), StaticTopology(n, s["edges"]))
            for s in data["snapshots"]
        ]
    except (KeyError, TypeError) as exc:
        raise GraphError(f"Malformed graph document: {exc}") from exc

    topology = DynamicTopology(n=n, tau=tau, snapshots=snapshots)
    report = validate_stability(topology)
    if not report:
        raise GraphError("Invalid graph document: " + "; ".join(report.reasons))
    return topology


def load_topology(path: str | Path) -> DynamicTopology:
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        return topology_from_dict(json.load(fh))


def save_topology(d: DynamicTopology, path: str | Path) -> None:
    """Write the materialized snapshots of *d* to *path*."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        json.dump(topology_to_dict(d), fh, indent=2)
        fh.write("\n")
