"""Helpers shared by the behaviors."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from mobile_gossip.engine import Connection
from mobile_gossip.transfer import Direction, TransferOutcome, transfer


def run_transfer(connection: Connection, epsilon: float, N: int) -> TransferOutcome:
    """Run Transfer over the connection and move the token it finds, if any."""
    proposer, acceptor = connection.proposer, connection.acceptor
    outcome = transfer(proposer.tokens, acceptor.tokens, epsilon, connection.rng, N)
    connection.send_bits(outcome.bits_used)
    if outcome.token is not None:
        if outcome.direction is Direction.U_TO_V:
            connection.move_token(outcome.token, proposer, acceptor)
        else:
            connection.move_token(outcome.token, acceptor, proposer)
    return outcome


def uniform_pick(rng: np.random.Generator, candidates: Sequence[int]) -> int | None:
    if not candidates:
        return None
    return candidates[int(rng.integers(len(candidates)))]


def coin(rng: np.random.Generator) -> bool:
    return bool(rng.integers(2))
