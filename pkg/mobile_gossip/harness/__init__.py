"""Experiment configuration, trial execution and result files."""

from mobile_gossip.harness.models import ExperimentConfig, ExperimentResult, next_power_of_two
from mobile_gossip.harness.output import resolve_output, summary_document, trace_document, write_json, write_results
from mobile_gossip.harness.runner import (
    build_topology,
    replay_trial,
    run_experiment,
    run_single_trial,
    run_sweep,
    trial_seed,
)
from mobile_gossip.harness.summary import downsample, records_frame, summarize

__all__ = [
    "ExperimentConfig",
    "ExperimentResult",
    "build_topology",
    "downsample",
    "next_power_of_two",
    "records_frame",
    "replay_trial",
    "resolve_output",
    "run_experiment",
    "run_single_trial",
    "run_sweep",
    "summarize",
    "summary_document",
    "trace_document",
    "trial_seed",
    "write_json",
    "write_results",
]
