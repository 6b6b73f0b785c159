"""Per-connection budget accounting and the two-party channel handed to behaviors."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from mobile_gossip.errors import BudgetExceededError

if TYPE_CHECKING:
    from mobile_gossip.engine.models import NodeState


class TokenMove(NamedTuple):
    token: int
    source: int
    dest: int


@dataclass
class BudgetLedger:
    token_cap: int
    bit_cap: int
    tokens_used: int = 0
    bits_used: int = 0

    def charge_tokens(self, count: int = 1) -> None:
        if self.tokens_used + count > self.token_cap:
            raise BudgetExceededError(
                f"Connection would move {self.tokens_used + count} tokens, cap is {self.token_cap}"
            )
        self.tokens_used += count

    def charge_bits(self, count: int) -> None:
        if self.bits_used + count > self.bit_cap:
            raise BudgetExceededError(
                f"Connection would use {self.bits_used + count} control bits, cap is {self.bit_cap}"
            )
        self.bits_used += count


@dataclass
class Connection:
    """A formed connection between a proposer and the node that accepted it."""
    round: int
    proposer: "NodeState"
    acceptor: "NodeState"
    ledger: BudgetLedger
    rng: np.random.Generator
    moves: list[TokenMove] = field(default_factory=list)

    def peer_of(self, state: "NodeState") -> "NodeState":
        return self.acceptor if state is self.proposer else self.proposer

    def send_bits(self, count: int) -> None:
        self.ledger.charge_bits(count)

    def move_token(self, token: int, source: "NodeState", dest: "NodeState") -> None:
        if token not in source.tokens:
            raise ValueError(f"Node {source.uid} cannot send token {token} it does not hold")
        self.ledger.charge_tokens(1)
        dest.tokens.add(token)
        self.moves.append(TokenMove(token, source.uid, dest.uid))
