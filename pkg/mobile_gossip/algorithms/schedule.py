"""
CrowdedBin schedule arithmetic.

Global rounds are dealt round-robin to the log2 N instances. Within an
instance, rounds form phases of k_i bins, bins of gamma*log2 N blocks, and
blocks of (ell + log2 N) rounds: ell tag-bit rounds followed by log2 N PPUSH
rounds, with ell = beta*log2 N.
"""

from __future__ import annotations

import enum
import math
from typing import NamedTuple

from mobile_gossip.engine import is_power_of_two


class Segment(enum.Enum):
    TAG_BIT = "tag_bit"
    PPUSH_ROUND = "ppush_round"


class Position(NamedTuple):
    phase: int
    bin: int
    block: int
    offset: int
    segment: Segment
    index: int


def log2_exact(N: int) -> int:
    if not is_power_of_two(N) or N < 2:
        raise ValueError(f"N must be a power of 2 >= 2, got {N}")
    return N.bit_length() - 1


def schedule_map(g: int, N: int) -> tuple[int, int]:
    """Global round g -> (instance j, instance round i)."""
    if g < 1:
        raise ValueError(f"Global round must be >= 1, got {g}")
    L = log2_exact(N)
    return (g - 1) % L + 1, math.ceil(g / L)


def tag_bits(beta: int, N: int) -> int:
    return beta * log2_exact(N)


def block_length(beta: int, N: int) -> int:
    return tag_bits(beta, N) + log2_exact(N)


def bin_length(beta: int, gamma: int, N: int) -> int:
    return gamma * log2_exact(N) * block_length(beta, N)


def phase_length(k_i: int, beta: int, gamma: int, N: int) -> int:
    return k_i * bin_length(beta, gamma, N)


def instance_position(i: int, k_i: int, beta: int, gamma: int, N: int) -> Position:
    if i < 1:
        raise ValueError(f"Instance round must be >= 1, got {i}")
    ell = tag_bits(beta, N)
    block_len = block_length(beta, N)
    bin_len = bin_length(beta, gamma, N)

    phase, within = divmod(i - 1, phase_length(k_i, beta, gamma, N))
    bin_, within = divmod(within, bin_len)
    block, offset = divmod(within, block_len)
    offset += 1
    if offset <= ell:
        segment, index = Segment.TAG_BIT, offset
    else:
        segment, index = Segment.PPUSH_ROUND, offset - ell
    return Position(phase + 1, bin_ + 1, block + 1, offset, segment, index)
