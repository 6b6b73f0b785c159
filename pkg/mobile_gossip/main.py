"""
Programmatic entry point for the mobile_gossip package.
Import and use this when scripting experiments from Python.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

from mobile_gossip.config import DEFAULT_EXPANSION_TRIALS, DEFAULT_FRESH_HORIZON
from mobile_gossip.engine import TrialRecord
from mobile_gossip.graph import DynamicTopology, GraphStats, generate, graph_stats, load_topology, save_topology
from mobile_gossip.harness import (
    ExperimentConfig,
    ExperimentResult,
    replay_trial,
    run_experiment,
    run_sweep,
    trace_document,
    write_json,
    write_results,
)


def _config(config: ExperimentConfig | dict[str, Any] | str | Path, **overrides: Any) -> ExperimentConfig:
    if isinstance(config, ExperimentConfig):
        data = config.to_dict()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return ExperimentConfig.from_dict(data)
    if isinstance(config, dict):
        return ExperimentConfig.from_dict({**config, **{k: v for k, v in overrides.items() if v is not None}})
    return ExperimentConfig.from_json(config, **overrides)


def run(config: ExperimentConfig | dict[str, Any] | str | Path, **overrides: Any) -> ExperimentResult:
    """Run an experiment and write the files named by its ``out`` / ``summary`` fields."""
    result = run_experiment(_config(config, **overrides))
    if result.config.out or result.config.summary:
        write_results(result, result.config.out, result.config.summary, result.config.deterministic)
    return result


def sweep(
        config: ExperimentConfig | dict[str, Any] | str | Path,
        sizes: list[int],
        **overrides: Any,
) -> list[ExperimentResult]:
    """Run one experiment per node count and write the stacked table."""
    base = _config(config, **overrides)
    results = run_sweep(base, sizes)
    if base.out or base.summary:
        write_results(results, base.out, base.summary, base.deterministic)
    return results


def replay(
        config: ExperimentConfig | dict[str, Any] | str | Path,
        trial: int,
        out: str | Path | None = None,
        **overrides: Any,
) -> TrialRecord:
    """Re-run a single trial with its full round trace, optionally dumped to *out*."""
    record = replay_trial(_config(config, **overrides), trial)
    if out:
        write_json(trace_document(record), out)
    return record


def stats(path: str | Path, trials: int = DEFAULT_EXPANSION_TRIALS, seed: int = 0) -> GraphStats:
    return graph_stats(load_topology(path), trials=trials, rng_seed=seed)


def generate_graph(
        kind: str,
        params: dict[str, Any],
        seed: int = 0,
        out: str | Path | None = None,
) -> DynamicTopology:
    """Build a topology; lazily generated sequences are materialized before saving."""
    topology = generate(kind, params, rng_seed=seed)
    if topology.factory is not None and not topology.snapshots:
        topology.materialize(DEFAULT_FRESH_HORIZON * int(topology.tau))
    if out:
        save_topology(topology, out)
    return topology
