"""Value types for the round engine."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping

from mobile_gossip.config import DEFAULT_MAX_ROUNDS, DEFAULT_TOKEN_CAP, TRANSFER_ERROR_EXPONENT
from mobile_gossip.engine.ledger import TokenMove
from mobile_gossip.engine.streams import NodeStreams
from mobile_gossip.errors import ConfigError
from mobile_gossip.transfer import transfer_bit_budget


def is_power_of_two(x: int) -> bool:
    return x >= 1 and (x & (x - 1)) == 0


@dataclass(frozen=True)
class SimConfig:
    """
    Immutable per-trial configuration.

    ``transfer_epsilon`` defaults to n ** -c_t and ``bit_cap`` to the worst-case
    cost of one transfer for (N, transfer_epsilon).
    """
    N: int
    n: int
    b: int = 1
    max_rounds: int = DEFAULT_MAX_ROUNDS
    rng_seed: int = 0
    token_cap: int = DEFAULT_TOKEN_CAP
    transfer_epsilon: float | None = None
    bit_cap: int | None = None
    random_uids: bool = False

    def __post_init__(self) -> None:
        errors: list[str] = []
        if self.n < 2:
            errors.append(f"n: must be >= 2, got {self.n}")
        if not is_power_of_two(self.N):
            errors.append(f"N: must be a power of 2, got {self.N}")
        if self.N < self.n:
            errors.append(f"N: must be >= n ({self.n}), got {self.N}")
        if self.b < 0:
            errors.append(f"b: must be >= 0, got {self.b}")
        if self.max_rounds < 1:
            errors.append(f"max_rounds: must be >= 1, got {self.max_rounds}")
        if self.token_cap < 1:
            errors.append(f"token_cap: must be >= 1, got {self.token_cap}")
        if self.transfer_epsilon is not None and not 0.0 < self.transfer_epsilon < 1.0:
            errors.append(f"transfer_epsilon: must be in (0, 1), got {self.transfer_epsilon}")
        if self.bit_cap is not None and self.bit_cap < 1:
            errors.append(f"bit_cap: must be >= 1, got {self.bit_cap}")
        if errors:
            raise ConfigError(errors)

        if self.transfer_epsilon is None:
            object.__setattr__(self, "transfer_epsilon", float(self.n) ** -TRANSFER_ERROR_EXPONENT)
        if self.bit_cap is None:
            object.__setattr__(self, "bit_cap", transfer_bit_budget(self.N, self.transfer_epsilon))

    @property
    def log_N(self) -> int:
        return max(1, int(math.log2(self.N)))


@dataclass
class NodeState:
    """Per-node state every behavior extends. ``tokens`` is T_u(r)."""
    uid: int
    tokens: set[int]
    streams: NodeStreams = field(repr=False)


@dataclass(frozen=True)
class NodeView:
    """What a node sees after the scan: its neighbors' UIDs and their tags."""
    my_uid: int
    neighbor_uids: tuple[int, ...]
    tags: Mapping[int, str] = field(repr=False)

    def tag_of(self, uid: int) -> str:
        return self.tags[uid]

    def neighbors_advertising(self, bit: str) -> list[int]:
        """Neighbors whose tag starts with *bit*, in scan order."""
        return [uid for uid in self.neighbor_uids if self.tags[uid][:1] == bit]


@dataclass
class RoundOutcome:
    round: int
    tags: dict[int, str]
    proposals: dict[int, int]
    matching: list[tuple[int, int]]
    transfers: list[TokenMove]
    bits_used: dict[tuple[int, int], int]
    phi_after: int
    events: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "round": self.round,
            "tags": {str(uid): tag for uid, tag in self.tags.items()},
            "proposals": {str(p): t for p, t in self.proposals.items()},
            "matching": [list(pair) for pair in self.matching],
            "transfers": [list(move) for move in self.transfers],
            "bits_used": [[p, a, bits] for (p, a), bits in self.bits_used.items()],
            "phi_after": self.phi_after,
            "events": list(self.events),
        }


@dataclass
class TrialRecord:
    """Outcome of one trial. ``completion_round`` is None when the trial did not finish (DNF)."""
    trial: int
    completion_round: int | None
    rounds_run: int
    phi_trajectory: list[int]
    connections: int
    bits_total: int
    trace_hash: str
    eps_completion_round: int | None = None
    extras: dict[str, Any] = field(default_factory=dict)
    outcomes: list[RoundOutcome] | None = field(default=None, repr=False)

    @property
    def dnf(self) -> bool:
        return self.completion_round is None
