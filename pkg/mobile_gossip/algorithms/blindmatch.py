"""
BlindMatch: no tags. Each round every node flips a fair coin; senders
propose to a uniformly random neighbor, receivers listen. A connection runs
Transfer.
"""

from __future__ import annotations

from mobile_gossip.algorithms.base import coin, run_transfer, uniform_pick
from mobile_gossip.engine import Connection, NodeBehavior, NodeState, NodeView


class BlindMatch(NodeBehavior):
    name = "blindmatch"
    min_tag_bits = 0

    def choose_tag(self, round_: int, state: NodeState) -> str:
        return self.idle_tag()

    def choose_action(self, round_: int, state: NodeState, view: NodeView) -> int | None:
        rng = state.streams.stream("coin")
        if not coin(rng):
            return None
        return uniform_pick(rng, view.neighbor_uids)

    def on_connect(self, round_: int, connection: Connection) -> None:
        run_transfer(connection, self.config.transfer_epsilon, self.config.N)
