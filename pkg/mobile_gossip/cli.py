"""
Command-line interface for mobile_gossip.

Commands
--------
    mobile-gossip run    --alg sharedbit --graph complete --n 8 --trials 200 --seed 7 --out r.csv
    mobile-gossip sweep  --alg blindmatch --graph ring --n 8,16,32 --out sweep.csv
    mobile-gossip graph stats --file ring8.json
    mobile-gossip graph gen   --kind ring --n 8 --out ring8.json
    mobile-gossip replay --config exp.json --trial 3 --trace-out trial3.json

Flags mirror the keys of a JSON config (``--config``); flags win over the file.
Exit codes: 0 success, 1 invalid configuration or graph input, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any

from mobile_gossip.config import ALGORITHMS, DEFAULT_EXPANSION_TRIALS, EXHAUSTION_POLICIES, STOP_RULES
from mobile_gossip.errors import ConfigError, GossipError, GraphError
from mobile_gossip.graph import GRAPH_KINDS, parse_tau, topology_to_dict
from mobile_gossip.harness import ExperimentConfig, ExperimentResult, trace_document
from mobile_gossip.main import generate_graph, replay, run, stats, sweep

_GRAPH_PARAM_FLAGS = ("p", "d", "delta", "horizon")
_EXPERIMENT_FLAGS = (
    "algorithm", "graph_kind", "graph_file", "n", "N", "k", "b", "tau", "epsilon", "stop", "reach_node",
    "trials", "seed", "max_rounds", "out", "summary", "beta", "gamma", "confidence", "transfer_exponent",
    "exhaustion", "shared_seed", "random_uids", "jobs", "deterministic",
)


# Helpers
def _fmt_round(value: float | None) -> str:
    return "n/a" if value is None else f"{value:,.1f}"


def _print_summary(result: ExperimentResult) -> None:
    config, summary = result.config, result.summary
    print(f"\n{config.algorithm.upper()} on {config.graph_label}  (n={config.n}, N={config.N}, k={config.k})")
    print("─" * 60)
    print(f"{'trials':<22}{summary['trials']:>10}")
    print(f"{'success':<22}{summary['success_fraction']:>10.1%}")
    for label, key in (("completion", "completion_round"), ("eps completion", "eps_completion_round")):
        if key not in summary:
            continue
        block = summary[key]
        print(
            f"{label:<22}"
            f"{'median':>8} {_fmt_round(block['median']):>10}"
            f"{'mean':>8} {_fmt_round(block['mean']):>10}"
            f"{'p95':>6} {_fmt_round(block['p95']):>10}"
        )
    if config.out:
        print(f"\nResults saved → {config.out}")


def _overrides(args: argparse.Namespace) -> dict[str, Any]:
    values = {name: getattr(args, name, None) for name in _EXPERIMENT_FLAGS}
    params = {name: getattr(args, name) for name in _GRAPH_PARAM_FLAGS if getattr(args, name, None) is not None}
    if params:
        values["graph_params"] = params
    return {k: v for k, v in values.items() if v is not None}


def _experiment(args: argparse.Namespace, **extra: Any) -> ExperimentConfig:
    data: dict[str, Any] = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ConfigError(f"{args.config}: expected a JSON object")
    overrides = {**_overrides(args), **extra}
    if "graph_params" in overrides:
        overrides["graph_params"] = {**data.get("graph_params", {}), **overrides["graph_params"]}
    return ExperimentConfig.from_dict({**data, **overrides})


def _parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ConfigError(f"n: expected a comma-separated list of integers, got '{text}'") from exc
    if not sizes:
        raise ConfigError("n: no sizes given")
    return sizes


# Parser
def _add_graph_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p",       type=float, default=None, help="Edge probability for random graphs")
    p.add_argument("--d",       type=int,   default=None, help="Degree for random_regular")
    p.add_argument("--delta",   type=int,   default=None, help="Leaves per center for two_stars")
    p.add_argument("--horizon", type=int,   default=None, help="Snapshots materialized up front for fresh_random_each_tau")


def _add_experiment_args(p: argparse.ArgumentParser, sizes: bool = False) -> None:
    p.add_argument("--config",        default=None,                              help="JSON config file; flags override its values")
    p.add_argument("--alg",           dest="algorithm", choices=ALGORITHMS,    default=None, help="Gossip algorithm")
    p.add_argument("--graph",         dest="graph_kind", choices=GRAPH_KINDS,  default=None, help="Graph family")
    p.add_argument("--file",          dest="graph_file",                         default=None, help="Graph JSON file instead of a family")
    if sizes:
        p.add_argument("--n",         dest="sizes", required=True,                 help="Comma-separated node counts, e.g. 8,16,32")
    else:
        p.add_argument("--n",         type=int,                                  default=None, help="Node count")
    p.add_argument("--N",             type=int,                                  default=None, help="UID space, a power of 2 >= n (default: next power of 2)")
    p.add_argument("--k",             type=int,                                  default=None, help="Number of tokens (default: n, or 1 for ppush)")
    p.add_argument("--b",             type=int,                                  default=None, help="Tag length in bits (default: 1)")
    p.add_argument("--tau",                                                      default=None, help="Stability factor, an integer or 'inf'")
    _add_graph_params(p)
    p.add_argument("--epsilon",       type=float,                                default=None, help="Track eps-gossip completion (needs k = n)")
    p.add_argument("--stop",          choices=STOP_RULES,                        default=None, help="Stop rule (default: gossip)")
    p.add_argument("--reach-node",    dest="reach_node", type=int,               default=None, help="Target node for --stop reach")
    p.add_argument("--trials",        type=int,                                  default=None, help="Number of trials")
    p.add_argument("--seed",          type=int,                                  default=None, help="Root seed")
    p.add_argument("--max-rounds",    dest="max_rounds", type=int,               default=None, help="Hard round limit per trial")
    p.add_argument("--out",                                                      default=None, help="CSV output path")
    p.add_argument("--summary",                                                  default=None, help="JSON summary output path")
    p.add_argument("--beta",          type=int,                                  default=None, help="CrowdedBin tag-length constant")
    p.add_argument("--gamma",         type=int,                                  default=None, help="CrowdedBin bin-size constant")
    p.add_argument("--confidence",    type=int,                                  default=None, help="CrowdedBin confidence constant c")
    p.add_argument("--c-t",           dest="transfer_exponent", type=float,      default=None, help="Transfer error exponent, eps_t = n ** -c_t")
    p.add_argument("--exhaustion",    choices=EXHAUSTION_POLICIES,               default=None, help="SharedBit behavior once the shared string runs out")
    p.add_argument("--shared-seed",   dest="shared_seed",                        default=None, help="Hex seed of SharedBit's shared string")
    p.add_argument("--random-uids",   dest="random_uids", action="store_true",  default=None, help="Assign UIDs by a random injection into [N]")
    p.add_argument("--jobs",          type=int,                                  default=None, help="Parallel trial workers (-1: all cores)")
    p.add_argument("--deterministic", action="store_true",                       default=None, help="Omit the timestamp from JSON output")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mobile-gossip",
        description="Gossip simulations in the mobile telephone model.",
    )
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = parser.add_subparsers(dest="command", metavar="<command>")
    sub.required = True

    # --- run ---
    p_run = sub.add_parser("run", help="Run an experiment and write CSV / JSON results.")
    _add_experiment_args(p_run)

    # --- sweep ---
    p_sweep = sub.add_parser("sweep", help="Run one experiment per node count and stack the results.")
    _add_experiment_args(p_sweep, sizes=True)

    # --- graph ---
    p_graph = sub.add_parser("graph", help="Inspect or generate topologies.")
    graph_sub = p_graph.add_subparsers(dest="graph_command", metavar="<graph command>")
    graph_sub.required = True

    p_stats = graph_sub.add_parser("stats", help="Print alpha, delta and diameter of a graph file.")
    p_stats.add_argument("--file",   required=True,                            help="Graph JSON file")
    p_stats.add_argument("--trials", type=int, default=DEFAULT_EXPANSION_TRIALS, help="Sampling trials when alpha is estimated")
    p_stats.add_argument("--seed",   type=int, default=0,                        help="Seed for the alpha estimate")

    p_gen = graph_sub.add_parser("gen", help="Generate a graph and emit its JSON.")
    p_gen.add_argument("--kind", choices=GRAPH_KINDS, required=True, help="Graph family")
    p_gen.add_argument("--n",    type=int, default=None,             help="Node count")
    p_gen.add_argument("--tau",  default=None,                       help="Stability factor for fresh_random_each_tau")
    p_gen.add_argument("--seed", type=int, default=0,                help="Generator seed")
    p_gen.add_argument("--out",  default=None,                       help="Output path (default: stdout)")
    _add_graph_params(p_gen)

    # --- replay ---
    p_replay = sub.add_parser("replay", help="Re-run one trial and dump its full trace.")
    _add_experiment_args(p_replay)
    p_replay.add_argument("--trial",     type=int, required=True, help="Trial index to replay")
    p_replay.add_argument("--trace-out", default=None,            help="Trace JSON path (default: stdout)")

    return parser


def _dispatch(args: argparse.Namespace) -> None:
    if args.command == "run":
        _print_summary(run(_experiment(args)))

    elif args.command == "sweep":
        for result in sweep(_experiment(args), _parse_sizes(args.sizes)):
            _print_summary(result)

    elif args.command == "graph" and args.graph_command == "stats":
        print(stats(args.file, trials=args.trials, seed=args.seed).describe())

    elif args.command == "graph" and args.graph_command == "gen":
        params = {name: getattr(args, name) for name in ("n", *_GRAPH_PARAM_FLAGS) if getattr(args, name) is not None}
        if args.tau is not None:
            params["tau"] = parse_tau(args.tau)
        topology = generate_graph(args.kind, params, seed=args.seed, out=args.out)
        if args.out:
            print(f"Graph saved → {args.out}")
        else:
            print(json.dumps(topology_to_dict(topology), indent=2))

    elif args.command == "replay":
        record = replay(_experiment(args), args.trial, out=args.trace_out)
        status = "DNF" if record.dnf else f"completed in round {record.completion_round}"
        print(f"trial {record.trial}: {status}, trace hash {record.trace_hash}")
        if args.trace_out:
            print(f"Trace saved → {args.trace_out}")
        else:
            print(json.dumps(trace_document(record), indent=2, default=str))


# Entry point
def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1

    logging.basicConfig(level=args.log_level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        _dispatch(args)
    except (ConfigError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except GossipError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
