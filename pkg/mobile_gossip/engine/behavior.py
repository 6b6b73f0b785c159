"""The NodeBehavior contract every algorithm implements."""
from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, ClassVar, Iterable

from mobile_gossip.engine.ledger import Connection
from mobile_gossip.engine.models import NodeState, NodeView, SimConfig
from mobile_gossip.engine.streams import NodeStreams
from mobile_gossip.errors import ConfigError


class NodeBehavior(ABC):
    """
    Per-node logic driven by the engine, one instance per trial.

    Each round the engine calls ``choose_tag`` for every node, then
    ``choose_action`` with the node's view of its neighbors' tags (return a
    neighbor UID to propose to, or None to listen), then ``on_connect`` once
    for every formed connection, then ``on_round_end`` for every node.
    """

    name: ClassVar[str] = "behavior"
    min_tag_bits: ClassVar[int] = 0

    def __init__(self) -> None:
        self.config: SimConfig | None = None
        self._events: list[str] = []

    def prepare(self, config: SimConfig) -> None:
        """Bind the trial configuration; called once before ``init_state``."""
        if config.b < self.min_tag_bits:
            raise ConfigError(f"b: {self.name} needs b >= {self.min_tag_bits}, got {config.b}")
        self.config = config

    def init_state(self, uid: int, tokens: Iterable[int], streams: NodeStreams) -> NodeState:
        return NodeState(uid=uid, tokens=set(tokens), streams=streams)

    def idle_tag(self) -> str:
        return "0" * self.config.b

    def pad(self, bit: str) -> str:
        """A one-bit advertisement padded to the configured tag length."""
        return bit + "0" * (self.config.b - 1)

    @abstractmethod
    def choose_tag(self, round_: int, state: NodeState) -> str:
        ...

    @abstractmethod
    def choose_action(self, round_: int, state: NodeState, view: NodeView) -> int | None:
        ...

    @abstractmethod
    def on_connect(self, round_: int, connection: Connection) -> None:
        ...

    def on_round_end(self, round_: int, state: NodeState) -> None:
        pass

    def extras(self) -> dict[str, Any]:
        """Algorithm-specific per-trial values appended to the results table."""
        return {}

    def record_event(self, message: str) -> None:
        self._events.append(message)

    def drain_events(self) -> list[str]:
        events, self._events = self._events, []
        return events
