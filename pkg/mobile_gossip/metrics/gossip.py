"""
Potential, completion predicates, and the frequency / coalition analysis
used for eps-gossip.
"""

from __future__ import annotations

from collections import Counter
from typing import AbstractSet, Sequence

from mobile_gossip.metrics.models import SOLVED, FrequencyEntry, FrequencyMultiset, Solved

TokenSets = Sequence[AbstractSet[int]]


def potential(token_sets: TokenSets, k: int) -> int:
    """phi = sum over nodes of (k - |T_u|); zero iff every node knows all k tokens."""
    total = 0
    for tokens in token_sets:
        missing = k - len(tokens)
        if missing < 0:
            raise ValueError(f"A node holds {len(tokens)} tokens but k={k}")
        total += missing
    return total


def is_gossip_complete(token_sets: TokenSets, k: int) -> bool:
    return all(len(tokens) == k for tokens in token_sets)


def frequency_multiset(token_sets: TokenSets) -> FrequencyMultiset:
    counts = Counter(frozenset(tokens) for tokens in token_sets)
    entries = sorted(
        (FrequencyEntry(tokens, q) for tokens, q in counts.items()),
        key=lambda e: (-e.q, len(e.tokens), sorted(e.tokens)),
    )
    return FrequencyMultiset(tuple(entries))


def normalise_epsilon(epsilon: float) -> float:
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    return max(epsilon, 0.5)


def coalition(f: FrequencyMultiset, n: int, epsilon: float) -> Solved | list[FrequencyEntry]:
    """
    Greedy coalition of token-set groups.

    Returns SOLVED when one group already holds more than eps*n nodes.
    Otherwise returns entries whose total count lies in [eps*n/2, eps*n]:
    the largest entry alone if it is big enough, else entries in decreasing
    count until the total first exceeds eps*n/2.
    """
    eps = normalise_epsilon(epsilon)
    low, high = eps * n / 2, eps * n
    if not f.entries:
        raise ValueError("Empty frequency multiset")
    entries = sorted(f.entries, key=lambda e: -e.q)

    q_max = f.q_max
    if q_max > high:
        return SOLVED
    if q_max >= low:
        chosen = [entries[0]]
    else:
        chosen, total = [], 0
        for entry in entries:
            chosen.append(entry)
            total += entry.q
            if total > low:
                break

    total = sum(e.q for e in chosen)
    assert low <= total <= high, (low, total, high)
    return chosen
