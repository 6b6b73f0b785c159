"""Experiment configuration and results."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any

from mobile_gossip.config import (
    ALGORITHMS,
    CROWDEDBIN_BETA,
    CROWDEDBIN_CONFIDENCE,
    CROWDEDBIN_GAMMA,
    DEFAULT_MAX_ROUNDS,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    EXHAUSTION_POLICIES,
    MIN_TAG_BITS,
    STOP_RULES,
    TRANSFER_ERROR_EXPONENT,
)
from mobile_gossip.engine import TrialRecord, is_power_of_two
from mobile_gossip.errors import ConfigError, GraphError
from mobile_gossip.graph import GRAPH_KINDS, INFINITY, load_topology, parse_tau
from mobile_gossip.graph.io import format_tau

# JSON / flag spellings that differ from the field names
_ALIASES = {
    "alg": "algorithm",
    "graph": "graph_kind",
    "file": "graph_file",
    "c_t": "transfer_exponent",
}


def next_power_of_two(n: int) -> int:
    return 1 << max(1, (n - 1).bit_length())


@dataclass(frozen=True)
class ExperimentConfig:
    algorithm: str = "sharedbit"
    graph_kind: str = "complete"
    graph_params: dict[str, Any] = field(default_factory=dict)
    graph_file: str | None = None
    n: int | None = None
    N: int | None = None
    k: int | None = None
    b: int = 1
    tau: float = INFINITY
    epsilon: float | None = None
    stop: str = "gossip"
    reach_node: int | None = None
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    max_rounds: int = DEFAULT_MAX_ROUNDS
    out: str | None = None
    summary: str | None = None
    beta: int = CROWDEDBIN_BETA
    gamma: int = CROWDEDBIN_GAMMA
    confidence: int = CROWDEDBIN_CONFIDENCE
    transfer_exponent: float = TRANSFER_ERROR_EXPONENT
    exhaustion: str = "wrap"
    shared_seed: str | None = None
    random_uids: bool = False
    jobs: int = 1
    deterministic: bool = False

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        values: dict[str, Any] = {}
        unknown = []
        for key, value in data.items():
            norm = key.replace("-", "_")
            name = _ALIASES.get(norm, norm)
            if name not in known:
                unknown.append(f"{key}: unknown configuration key")
            elif value is not None:
                values[name] = value
        if unknown:
            raise ConfigError(unknown)
        if "tau" in values:
            try:
                values["tau"] = parse_tau(values["tau"])
            except (GraphError, ValueError) as exc:
                raise ConfigError(f"tau: {exc}") from exc
        return cls(**values)

    @classmethod
    def from_json(cls, path: str | Path, **overrides: Any) -> "ExperimentConfig":
        with Path(path).open("r", encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: expected a JSON object")
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls.from_dict(data)

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["tau"] = format_tau(self.tau)
        return data

    @property
    def graph_label(self) -> str:
        return self.graph_file or self.graph_kind

    def resolved(self) -> "ExperimentConfig":
        """Fill n, N and k from the graph and each other, then validate."""
        n = self.n
        if n is None and self.graph_kind == "two_stars" and "delta" in self.graph_params:
            n = 2 * int(self.graph_params["delta"]) + 2
        if n is None and self.graph_file is None:
            n = self.graph_params.get("n")
        if n is None and self.graph_file is not None:
            n = load_topology(self.graph_file).n
        config = replace(self, n=n)
        if n is not None:
            k = self.k if self.k is not None else (1 if self.algorithm == "ppush" else n)
            config = replace(config, N=self.N or next_power_of_two(n), k=k)
        config.validate()
        return config

    def validate(self) -> None:
        errors: list[str] = []
        if self.algorithm not in ALGORITHMS:
            errors.append(f"algorithm: unknown '{self.algorithm}', choose from {ALGORITHMS}")
        if self.graph_file is None and self.graph_kind not in GRAPH_KINDS:
            errors.append(f"graph: unknown kind '{self.graph_kind}', choose from {GRAPH_KINDS}")
        if self.stop not in STOP_RULES:
            errors.append(f"stop: choose from {STOP_RULES}, got '{self.stop}'")
        if self.exhaustion not in EXHAUSTION_POLICIES:
            errors.append(f"exhaustion: choose from {EXHAUSTION_POLICIES}, got '{self.exhaustion}'")

        if self.n is None:
            errors.append("n: required (or give a graph file / two_stars delta)")
        elif self.n < 2:
            errors.append(f"n: must be >= 2, got {self.n}")
        else:
            if self.N is not None and (not is_power_of_two(self.N) or self.N < self.n):
                errors.append(f"N: must be a power of 2 >= n ({self.n}), got {self.N}")
            if self.k is not None and not 1 <= self.k <= self.n:
                errors.append(f"k: must satisfy 1 <= k <= n ({self.n}), got {self.k}")
            if self.reach_node is not None and not 0 <= self.reach_node < self.n:
                errors.append(f"reach_node: must be a node in 0..{self.n - 1}, got {self.reach_node}")

        required_b = MIN_TAG_BITS.get(self.algorithm, 0)
        if self.b < required_b:
            errors.append(f"b: {self.algorithm} needs b >= {required_b}, got {self.b}")
        if self.epsilon is not None:
            if not 0.0 < self.epsilon < 1.0:
                errors.append(f"epsilon: must be in (0, 1), got {self.epsilon}")
            if self.k is not None and self.n is not None and self.k != self.n:
                errors.append(f"epsilon: eps-gossip needs k = n, got k={self.k}, n={self.n}")
        if self.stop == "eps" and self.epsilon is None:
            errors.append("epsilon: required when stop is 'eps'")
        if self.algorithm == "crowdedbin":
            if self.tau != INFINITY or self.graph_kind == "fresh_random_each_tau":
                errors.append("tau: crowdedbin requires a static graph (tau = inf)")
        if self.algorithm == "ppush" and self.k not in (None, 1):
            errors.append(f"k: ppush spreads a single rumor, got k={self.k}")
        if self.graph_kind == "fresh_random_each_tau" and self.graph_file is None and self.tau == INFINITY:
            errors.append("tau: fresh_random_each_tau needs a finite tau")

        if self.trials < 1:
            errors.append(f"trials: must be >= 1, got {self.trials}")
        if self.max_rounds < 1:
            errors.append(f"max_rounds: must be >= 1, got {self.max_rounds}")
        if self.transfer_exponent <= 0:
            errors.append(f"c_t: must be > 0, got {self.transfer_exponent}")
        if self.jobs == 0:
            errors.append("jobs: must be non-zero (-1 uses every core)")
        if errors:
            raise ConfigError(errors)


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    records: list[TrialRecord]
    summary: dict[str, Any]
