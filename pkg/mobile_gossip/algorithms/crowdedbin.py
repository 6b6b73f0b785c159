"""
CrowdedBin: gossip without knowing k.

Each token holder draws a random tag and, for every instance j (testing the
estimate k_j = 2**j), a random bin in 1..k_j. Nodes run the instance of their
current estimate: during tag-bit rounds they spell the tags they know for the
current bin, one tag per block, smallest first; during the PPUSH rounds of a
block the owners of the block's token push it to neighbors. A bin whose known
tags reach gamma*log2 N is crowded and raises the estimate, as does any 1 bit
heard on a higher instance. Upgrades wait while a node is committed to a phase.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Iterable

from mobile_gossip.algorithms.base import uniform_pick
from mobile_gossip.algorithms.oracle import GoodnessReport, is_good_configuration, tag_space
from mobile_gossip.algorithms.schedule import (
    Position,
    Segment,
    instance_position,
    log2_exact,
    schedule_map,
    tag_bits,
)
from mobile_gossip.config import CROWDEDBIN_BETA, CROWDEDBIN_CONFIDENCE, CROWDEDBIN_GAMMA
from mobile_gossip.engine import Connection, NodeBehavior, NodeState, NodeView, SimConfig
from mobile_gossip.engine.streams import NodeStreams
from mobile_gossip.errors import ConfigError

logger = logging.getLogger(__name__)

BinKey = tuple[int, int]


@dataclass
class CrowdedBinState(NodeState):
    tag: int | None = None
    bin_choices: list[int] = field(default_factory=list)
    est: int = 1
    pending_est: int | None = None
    committed: int | None = None
    bins: dict[BinKey, set[int]] = field(default_factory=lambda: defaultdict(set), repr=False)
    order: dict[BinKey, tuple[int, ...]] = field(default_factory=dict, repr=False)
    staged: dict[BinKey, set[int]] = field(default_factory=lambda: defaultdict(set), repr=False)
    received: dict[int, int] = field(default_factory=dict, repr=False)
    heard: dict[int, int] = field(default_factory=dict, repr=False)
    pushing: tuple[int, int] | None = None
    est_history: list[tuple[int, int]] = field(default_factory=list, repr=False)

    def spelled(self, key: BinKey, block: int) -> int | None:
        """The block-th smallest known tag of bin *key*, or None for an empty slot."""
        known = self.order.get(key, ())
        return known[block - 1] if block <= len(known) else None

    def merge(self, key: BinKey, tags: Iterable[int]) -> None:
        self.bins[key].update(tags)
        self.order[key] = tuple(sorted(self.bins[key]))


class CrowdedBin(NodeBehavior):
    name = "crowdedbin"
    min_tag_bits = 1

    def __init__(
            self,
            beta: int = CROWDEDBIN_BETA,
            gamma: int = CROWDEDBIN_GAMMA,
            confidence: int = CROWDEDBIN_CONFIDENCE,
    ) -> None:
        super().__init__()
        errors = []
        if beta < confidence + 3:
            errors.append(f"beta: must be >= c+3 = {confidence + 3}, got {beta}")
        if gamma < 3 * confidence + 9:
            errors.append(f"gamma: must be >= 3c+9 = {3 * confidence + 9}, got {gamma}")
        if errors:
            raise ConfigError(errors)
        self.beta = beta
        self.gamma = gamma
        self.confidence = confidence
        self.states: list[CrowdedBinState] = []
        self.saturated_warnings = 0
        self._current: tuple[int, int, Position] | None = None

    def prepare(self, config: SimConfig) -> None:
        super().prepare(config)
        self.L = log2_exact(config.N)
        self.ell = tag_bits(self.beta, config.N)
        self.crowded_threshold = self.gamma * self.L
        if self.ell > config.bit_cap:
            raise ConfigError(f"bit_cap: PPUSH connections carry a {self.ell}-bit tag, cap is {config.bit_cap}")

    def init_state(self, uid: int, tokens: Iterable[int], streams: NodeStreams) -> NodeState:
        tokens = set(tokens)
        if len(tokens) > 1:
            raise ConfigError(f"crowdedbin: node {uid} starts with {len(tokens)} tokens, at most 1 allowed")
        state = CrowdedBinState(uid=uid, tokens=tokens, streams=streams)
        state.est_history.append((0, 1))
        if tokens:
            rng = streams.rng("crowdedbin-config")
            state.tag = int(rng.integers(1, tag_space(self.beta, self.config.N) + 1))
            state.bin_choices = [int(rng.integers(1, (1 << j) + 1)) for j in range(1, self.L + 1)]
            state.received[state.tag] = next(iter(tokens))
            for j, b in enumerate(state.bin_choices, start=1):
                state.merge((j, b), [state.tag])
        self.states.append(state)
        return state

    def position(self, round_: int) -> tuple[int, Position]:
        """(instance, position) for a global round; the same at every node."""
        if self._current is None or self._current[0] != round_:
            j, i = schedule_map(round_, self.config.N)
            self._current = (round_, j, instance_position(i, 1 << j, self.beta, self.gamma, self.config.N))
        _, j, pos = self._current
        return j, pos

    def _is_bin_end(self, pos: Position) -> bool:
        return pos.block == self.crowded_threshold and pos.offset == self.ell + self.L

    def _upgrade(self, state: CrowdedBinState, round_: int, new_est: int, reason: str) -> None:
        if new_est <= max(state.est, state.pending_est or 0):
            return
        if state.committed is not None:
            state.pending_est = new_est
            return
        self._apply(state, round_, new_est, reason)

    def _apply(self, state: CrowdedBinState, round_: int, new_est: int, reason: str) -> None:
        state.est = new_est
        state.est_history.append((round_, new_est))
        self.record_event(f"node {state.uid} estimate -> {new_est} ({reason})")
        logger.debug("round %d: node %d raises its estimate to %d (%s)", round_, state.uid, new_est, reason)

    def choose_tag(self, round_: int, state: CrowdedBinState) -> str:
        j, pos = self.position(round_)
        if pos.bin == 1 and pos.block == 1 and pos.offset == 1 and state.committed is None and state.est == j:
            state.committed = j
        state.pushing = None
        if state.committed != j:
            return self.pad("0")

        tag = state.spelled((j, pos.bin), pos.block)
        if tag is None:
            return self.pad("0")
        if pos.segment is Segment.TAG_BIT:
            return self.pad(str((tag >> (self.ell - pos.index)) & 1))
        if tag in state.received:
            state.pushing = (tag, state.received[tag])
            return self.pad("1")
        return self.pad("0")

    def choose_action(self, round_: int, state: CrowdedBinState, view: NodeView) -> int | None:
        j, pos = self.position(round_)
        if j > state.est and view.neighbors_advertising("1"):
            self._upgrade(state, round_, j, f"activity on instance {j}")

        if pos.segment is Segment.TAG_BIT:
            if state.committed == j:
                self._listen(state, view, j, pos)
            return None

        if state.pushing is None:
            return None
        uninformed = view.neighbors_advertising("0")
        return uniform_pick(state.streams.stream("ppush"), uninformed)

    def _listen(self, state: CrowdedBinState, view: NodeView, j: int, pos: Position) -> None:
        if pos.index == 1:
            state.heard = {}
        for uid in view.neighbor_uids:
            state.heard[uid] = (state.heard.get(uid, 0) << 1) | int(view.tag_of(uid)[0])
        if pos.index == self.ell:
            spelled = [value for value in state.heard.values() if value]
            if spelled:
                state.staged[(j, pos.bin)].update(spelled)

    def on_connect(self, round_: int, connection: Connection) -> None:
        j, pos = self.position(round_)
        sender, receiver = connection.proposer, connection.acceptor
        tag, token = sender.pushing
        connection.send_bits(self.ell)
        connection.move_token(token, sender, receiver)
        receiver.received.setdefault(tag, token)
        receiver.staged[(j, pos.bin)].add(tag)

    def on_round_end(self, round_: int, state: CrowdedBinState) -> None:
        j, pos = self.position(round_)
        if not self._is_bin_end(pos):
            return

        key = (j, pos.bin)
        if state.staged.get(key):
            state.merge(key, state.staged.pop(key))

        if state.committed != j:
            return
        if len(state.bins[key]) >= self.crowded_threshold:
            if j < self.L:
                self._upgrade(state, round_, j + 1, f"crowded bin {pos.bin}")
            else:
                self.saturated_warnings += 1
                self.record_event(f"node {state.uid} saw a crowded bin at the maximum estimate {j}")
                logger.warning("round %d: node %d saw a crowded bin at the maximum estimate", round_, state.uid)

        if pos.bin == 1 << j:
            state.committed = None
            if state.pending_est is not None:
                new_est, state.pending_est = state.pending_est, None
                self._apply(state, round_, new_est, "deferred to phase end")

    def configuration(self) -> GoodnessReport:
        holders = [s for s in self.states if s.tag is not None]
        return is_good_configuration(
            [s.tag for s in holders],
            [s.bin_choices for s in holders],
            max(1, len(holders)),
            self.config.N,
            self.beta,
            self.gamma,
        )

    def extras(self) -> dict[str, Any]:
        report = self.configuration()
        return {
            "target_instance": report.target_instance,
            "good": report.good,
            "max_estimate": max(s.est for s in self.states),
            "final_estimates": " ".join(str(s.est) for s in self.states),
            "saturated_warnings": self.saturated_warnings,
        }
