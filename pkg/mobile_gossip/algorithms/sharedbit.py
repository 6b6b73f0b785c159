"""
SharedBit: every node reads the same shared string. In round r a node
advertises the parity of the group-r bits of the tokens it knows (0 when it
knows none); nodes advertising 1 propose to a neighbor advertising 0, chosen
with the bits of their own bundle. Connections run Transfer.
"""

from __future__ import annotations

import logging
from typing import Any

import numpy as np

from mobile_gossip.algorithms.base import run_transfer
from mobile_gossip.algorithms.blindmatch import BlindMatch
from mobile_gossip.config import EXHAUSTION_POLICIES
from mobile_gossip.engine import Connection, NodeBehavior, NodeState, NodeView, SimConfig, derive_rng
from mobile_gossip.errors import ConfigError
from mobile_gossip.randomness import Seed, SharedString, proposal_choice

logger = logging.getLogger(__name__)


def parity(token_bits: np.ndarray, tokens) -> int:
    """(sum of the token bits of *tokens*) mod 2; 0 for no tokens."""
    if not tokens:
        return 0
    idx = np.fromiter(tokens, dtype=np.int64, count=len(tokens)) - 1
    return int(token_bits[idx].sum() & 1)


class SharedBit(NodeBehavior):
    name = "sharedbit"
    min_tag_bits = 1

    def __init__(
            self,
            shared: SharedString | None = None,
            exhaustion: str = "wrap",
            shared_seed: Seed | None = None,
    ) -> None:
        super().__init__()
        if exhaustion not in EXHAUSTION_POLICIES:
            raise ConfigError(f"exhaustion: choose from {EXHAUSTION_POLICIES}, got '{exhaustion}'")
        self.shared = shared
        self.shared_seed = shared_seed
        self.exhaustion = exhaustion
        self.wraps = 0
        self._fallback: BlindMatch | None = None

    def prepare(self, config: SimConfig) -> None:
        super().prepare(config)
        if self.shared is None:
            seed = self.shared_seed or Seed.random(config.N, derive_rng(config.rng_seed, "shared-seed"))
            self.shared = SharedString.from_seed(config.N, seed)
        elif self.shared.N != config.N:
            raise ConfigError(f"N: shared string built for N={self.shared.N}, config has N={config.N}")
        if self.exhaustion == "blindmatch":
            self._fallback = BlindMatch()
            self._fallback.prepare(config)

    def group_for(self, round_: int) -> int | None:
        """Group read in *round_*, or None once the string is used up and the policy does not wrap."""
        groups = self.shared.groups
        if round_ <= groups:
            return round_
        if self.exhaustion != "wrap":
            return None
        group = (round_ - 1) % groups + 1
        if group == 1 and self.wraps < (round_ - 1) // groups:
            self.wraps += 1
            self.record_event(f"shared string wrapped to group 1 (wrap {self.wraps})")
            logger.info("shared string exhausted at round %d, wrapping to group 1", round_)
        return group

    def choose_tag(self, round_: int, state: NodeState) -> str:
        group = self.group_for(round_)
        if group is None:
            return self.idle_tag()
        return self.pad(str(parity(self.shared.group(group)[:, 0], state.tokens)))

    def choose_action(self, round_: int, state: NodeState, view: NodeView) -> int | None:
        group = self.group_for(round_)
        if group is None:
            if self._fallback is not None:
                return self._fallback.choose_action(round_, state, view)
            return None
        if view.tag_of(state.uid)[0] != "1":
            return None
        candidates = sorted(view.neighbors_advertising("0"))
        if not candidates:
            return None
        return candidates[proposal_choice(self.shared, group, state.uid, len(candidates))]

    def on_connect(self, round_: int, connection: Connection) -> None:
        run_transfer(connection, self.config.transfer_epsilon, self.config.N)

    def extras(self) -> dict[str, Any]:
        return {"wraps": self.wraps}
