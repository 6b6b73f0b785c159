"""
PPUSH rumor spreading: informed nodes advertise 1 and propose to a uniformly
chosen neighbor advertising 0; a connection delivers the rumor.
"""

from __future__ import annotations

from typing import Iterable

from mobile_gossip.algorithms.base import uniform_pick
from mobile_gossip.engine import Connection, NodeBehavior, NodeState, NodeView
from mobile_gossip.engine.streams import NodeStreams


class PPush(NodeBehavior):
    name = "ppush"
    min_tag_bits = 1

    def __init__(self, rumor: int | None = None, informed_uids: Iterable[int] = ()) -> None:
        """
        *rumor* defaults to the token of the first node that starts with one.
        Nodes in *informed_uids* start informed in addition to the token holders.
        """
        super().__init__()
        self.rumor = rumor
        self.informed_uids = frozenset(informed_uids)

    def init_state(self, uid: int, tokens: Iterable[int], streams: NodeStreams) -> NodeState:
        state = super().init_state(uid, tokens, streams)
        if self.rumor is None and state.tokens:
            self.rumor = min(state.tokens)
        if uid in self.informed_uids:
            if self.rumor is None:
                self.rumor = uid
            state.tokens.add(self.rumor)
        return state

    def is_informed(self, state: NodeState) -> bool:
        return self.rumor is not None and self.rumor in state.tokens

    def choose_tag(self, round_: int, state: NodeState) -> str:
        return self.pad("1" if self.is_informed(state) else "0")

    def choose_action(self, round_: int, state: NodeState, view: NodeView) -> int | None:
        if not self.is_informed(state):
            return None
        uninformed = view.neighbors_advertising("0")
        return uniform_pick(state.streams.stream("push"), uninformed)

    def on_connect(self, round_: int, connection: Connection) -> None:
        if self.rumor not in connection.acceptor.tokens:
            connection.move_token(self.rumor, connection.proposer, connection.acceptor)
