"""
Trial execution. Each trial derives its own seed from (root seed, trial
index) and builds its own topology, behavior and world, so trials can run
in any order or in parallel.
"""

from __future__ import annotations

import logging
from dataclasses import replace
from typing import Any, Callable

from joblib import Parallel, delayed

from mobile_gossip.algorithms import behavior_for
from mobile_gossip.engine import NodeBehavior, SimConfig, TrialRecord, WorldState, build_world, derive_seed, run_trial
from mobile_gossip.graph import DynamicTopology, generate, load_topology, two_star_centers
from mobile_gossip.harness.models import ExperimentConfig, ExperimentResult
from mobile_gossip.harness.summary import summarize
from mobile_gossip.metrics import EpsCompletionTracker, is_gossip_complete

logger = logging.getLogger(__name__)


def trial_seed(config: ExperimentConfig, index: int) -> int:
    return derive_seed(config.seed, "trial", index)


def build_topology(config: ExperimentConfig, seed: int) -> DynamicTopology:
    if config.graph_file:
        return load_topology(config.graph_file)
    params = {**config.graph_params, "n": config.n, "tau": config.tau}
    return generate(config.graph_kind, params, rng_seed=seed)


def build_sim_config(config: ExperimentConfig, seed: int) -> SimConfig:
    return SimConfig(
        N=config.N,
        n=config.n,
        b=config.b,
        max_rounds=config.max_rounds,
        rng_seed=seed,
        transfer_epsilon=float(config.n) ** -config.transfer_exponent,
        random_uids=config.random_uids,
    )


def build_behavior(config: ExperimentConfig) -> NodeBehavior:
    return behavior_for(
        config.algorithm,
        shared_seed=config.shared_seed,
        exhaustion=config.exhaustion,
        beta=config.beta,
        gamma=config.gamma,
        confidence=config.confidence,
    )


def reach_target(config: ExperimentConfig) -> int:
    """Node whose learning the first token ends a 'reach' trial."""
    if config.reach_node is not None:
        return config.reach_node
    if config.graph_kind == "two_stars" and not config.graph_file:
        return two_star_centers(int(config.graph_params["delta"]))[1]
    return config.n - 1


def stop_rule(
        config: ExperimentConfig,
        world: WorldState,
        tracker: EpsCompletionTracker | None,
) -> Callable[[WorldState], bool]:
    if config.stop == "eps":
        return lambda w: tracker.round is not None
    if config.stop == "reach":
        node, token = reach_target(config), world.uids[0]
        return lambda w: token in w.states[node].tokens
    return lambda w: is_gossip_complete(w.token_sets, w.k)


def run_single_trial(config: ExperimentConfig, index: int, keep_trace: bool = False) -> TrialRecord:
    seed = trial_seed(config, index)
    topology = build_topology(config, seed)
    sim = build_sim_config(config, seed)
    behavior = build_behavior(config)
    world = build_world(sim, behavior, config.k)

    tracker = None
    if config.epsilon is not None:
        tracker = EpsCompletionTracker(world.uids, config.epsilon)
        tracker.update(0, world.token_sets)

    def observe(w: WorldState, outcome: Any) -> None:
        if tracker is not None:
            tracker.update(outcome.round, w.token_sets)

    record = run_trial(
        sim,
        behavior,
        topology,
        stop_rule(config, world, tracker),
        trial=index,
        keep_trace=keep_trace,
        observer=observe,
        world=world,
    )
    record.eps_completion_round = tracker.round if tracker is not None else None
    record.extras = {f"{config.algorithm}_{key}": value for key, value in behavior.extras().items()}
    return record


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Run every trial of *config* and summarise them; records are ordered by trial index."""
    config = config.resolved()
    logger.info(
        "running %s on %s: n=%d N=%d k=%d, %d trials",
        config.algorithm, config.graph_label, config.n, config.N, config.k, config.trials,
    )
    indices = range(config.trials)
    if config.jobs == 1:
        records = [run_single_trial(config, i) for i in indices]
    else:
        records = Parallel(n_jobs=config.jobs)(delayed(run_single_trial)(config, i) for i in indices)
    records = sorted(records, key=lambda r: r.trial)
    return ExperimentResult(config=config, records=records, summary=summarize(records))


def run_sweep(config: ExperimentConfig, sizes: list[int]) -> list[ExperimentResult]:
    """One experiment per node count; k follows n unless it was fixed."""
    results = []
    for n in sizes:
        point = replace(config, n=n, N=None if config.N is None or config.N < n else config.N)
        results.append(run_experiment(point))
    return results


def replay_trial(config: ExperimentConfig, index: int) -> TrialRecord:
    """Re-run one trial with every RoundOutcome kept."""
    config = config.resolved()
    if not 0 <= index < config.trials:
        logger.warning("replaying trial %d outside the configured %d trials", index, config.trials)
    return run_single_trial(config, index, keep_trace=True)

