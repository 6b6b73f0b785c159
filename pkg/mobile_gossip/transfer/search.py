"""
Transfer(eps): binary search over [1, N] for the smallest token known to
exactly one side of a connection.

One EQTest covers the whole interval first; while the live interval [a, b]
holds more than two values the lower half [a, m] is tested and the interval
halves. The last (at most two) candidates are settled by exchanging exact
membership bits, so a returned token is always in the symmetric difference.
At most ceil(log2 N) EQTest calls are made.
"""

from __future__ import annotations

import enum
import math
from typing import AbstractSet, NamedTuple

import numpy as np

from mobile_gossip.config import MEMBERSHIP_SLACK_BITS
from mobile_gossip.transfer.fingerprint import eq_test, trial_bits


class Direction(enum.Enum):
    U_TO_V = "U->V"
    V_TO_U = "V->U"


class TransferOutcome(NamedTuple):
    token: int | None
    direction: Direction | None
    bits_used: int
    eq_calls: int


def log2_ceil(N: int) -> int:
    return max(1, math.ceil(math.log2(N)))


def trials_per_call(N: int, epsilon: float) -> int:
    """EQTest trial count c = ceil(log2(ceil(log2 N) / epsilon))."""
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    return max(1, math.ceil(math.log2(log2_ceil(N) / epsilon)))


def per_call_bits(N: int, epsilon: float) -> int:
    return trials_per_call(N, epsilon) * trial_bits(N) + MEMBERSHIP_SLACK_BITS


def transfer_bit_budget(N: int, epsilon: float) -> int:
    """Worst-case bits of one transfer, O(log^2 N * log(log N / eps))."""
    return log2_ceil(N) * per_call_bits(N, epsilon)


def _window(tokens: AbstractSet[int], a: int, b: int) -> frozenset[int]:
    return frozenset(t for t in tokens if a <= t <= b)


def transfer(
        set_u: AbstractSet[int],
        set_v: AbstractSet[int],
        epsilon: float,
        rng: np.random.Generator,
        N: int,
) -> TransferOutcome:
    c = trials_per_call(N, epsilon)
    bits = 0

    whole = eq_test(set_u, set_v, c, rng, N)
    bits += whole.bits_used
    calls = 1
    if whole.equal:
        return TransferOutcome(None, None, bits, calls)

    a, b = 1, N
    while b - a + 1 > 2:
        m = (a + b) // 2
        half = eq_test(_window(set_u, a, m), _window(set_v, a, m), c, rng, N)
        bits += half.bits_used
        calls += 1
        if half.equal:
            a = m + 1
        else:
            b = m

    for t in range(a, b + 1):
        bits += 2
        in_u, in_v = t in set_u, t in set_v
        if in_u != in_v:
            return TransferOutcome(t, Direction.U_TO_V if in_u else Direction.V_TO_U, bits, calls)
    return TransferOutcome(None, None, bits, calls)
