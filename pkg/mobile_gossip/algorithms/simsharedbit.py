"""
SimSharedBit: SharedBit without a pre-shared string.

Every node draws its own seed. Even rounds run a leader-election stand-in
(BlindMatch-style random meetings where both ends adopt the smaller
(candidate UID, seed) pair); odd rounds run SharedBit on the string expanded
from the seed of the node's current candidate. Once every node holds the
minimum UID all odd rounds use one common string.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Iterable

from mobile_gossip.algorithms.base import coin, run_transfer, uniform_pick
from mobile_gossip.algorithms.sharedbit import parity
from mobile_gossip.engine import Connection, NodeBehavior, NodeState, NodeView, SimConfig
from mobile_gossip.engine.streams import NodeStreams
from mobile_gossip.errors import ConfigError
from mobile_gossip.randomness import Seed, SharedString, proposal_choice, seed_length
from mobile_gossip.transfer import log2_ceil

logger = logging.getLogger(__name__)


@dataclass
class SimSharedBitState(NodeState):
    own_seed: Seed | None = None
    candidate_uid: int = 0
    payload: Seed | None = None
    candidate_history: list[tuple[int, int]] = field(default_factory=list, repr=False)


class SimSharedBit(NodeBehavior):
    name = "simsharedbit"
    min_tag_bits = 1

    def __init__(self) -> None:
        super().__init__()
        self.states: list[SimSharedBitState] = []
        self.convergence_round: int | None = None
        self.wraps = 0
        self._strings: dict[Seed, SharedString] = {}

    @property
    def exchange_bits(self) -> int:
        """Bits of one election exchange: both sides send a UID and a seed."""
        return 2 * (log2_ceil(self.config.N) + seed_length(self.config.N))

    def prepare(self, config: SimConfig) -> None:
        super().prepare(config)
        if self.exchange_bits > config.bit_cap:
            raise ConfigError(
                f"bit_cap: leader election needs {self.exchange_bits} bits per connection, cap is {config.bit_cap}"
            )

    def init_state(self, uid: int, tokens: Iterable[int], streams: NodeStreams) -> NodeState:
        seed = Seed.random(self.config.N, streams.rng("own-seed"))
        state = SimSharedBitState(
            uid=uid, tokens=set(tokens), streams=streams, own_seed=seed, candidate_uid=uid, payload=seed
        )
        state.candidate_history.append((0, uid))
        self.states.append(state)
        return state

    def string_for(self, seed: Seed) -> SharedString:
        if seed not in self._strings:
            self._strings[seed] = SharedString.from_seed(self.config.N, seed)
        return self._strings[seed]

    def group_for(self, round_: int, shared: SharedString) -> int:
        step = (round_ + 1) // 2
        group = (step - 1) % shared.groups + 1
        if step > shared.groups and group == 1 and self.wraps < (step - 1) // shared.groups:
            self.wraps += 1
            self.record_event(f"shared string wrapped to group 1 (wrap {self.wraps})")
            logger.info("shared string exhausted at round %d, wrapping to group 1", round_)
        return group

    def choose_tag(self, round_: int, state: SimSharedBitState) -> str:
        if round_ % 2 == 0:
            return self.idle_tag()
        shared = self.string_for(state.payload)
        return self.pad(str(parity(shared.group(self.group_for(round_, shared))[:, 0], state.tokens)))

    def choose_action(self, round_: int, state: SimSharedBitState, view: NodeView) -> int | None:
        if round_ % 2 == 0:
            rng = state.streams.stream("election")
            return uniform_pick(rng, view.neighbor_uids) if coin(rng) else None
        if view.tag_of(state.uid)[0] != "1":
            return None
        candidates = sorted(view.neighbors_advertising("0"))
        if not candidates:
            return None
        shared = self.string_for(state.payload)
        group = self.group_for(round_, shared)
        return candidates[proposal_choice(shared, group, state.uid, len(candidates))]

    def on_connect(self, round_: int, connection: Connection) -> None:
        if round_ % 2:
            run_transfer(connection, self.config.transfer_epsilon, self.config.N)
            return

        connection.send_bits(self.exchange_bits)
        a, b = connection.proposer, connection.acceptor
        leader, payload = min((a.candidate_uid, a.payload), (b.candidate_uid, b.payload), key=lambda c: c[0])
        for state in (a, b):
            if state.candidate_uid != leader:
                state.candidate_uid, state.payload = leader, payload
                state.candidate_history.append((round_, leader))

        if self.convergence_round is None and self.converged:
            self.convergence_round = round_
            logger.debug("leader election converged on uid %d at round %d", leader, round_)

    @property
    def converged(self) -> bool:
        target = min(s.uid for s in self.states)
        return all(s.candidate_uid == target for s in self.states)

    def extras(self) -> dict[str, Any]:
        return {"convergence_round": self.convergence_round, "wraps": self.wraps}
