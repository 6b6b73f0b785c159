"""Connection resolution: each listener accepts one incoming proposal uniformly at random."""
from __future__ import annotations

from collections import defaultdict
from typing import AbstractSet, Callable, Mapping

import numpy as np

from mobile_gossip.errors import MalformedProposalError, MatchingViolationError

RngSource = np.random.Generator | Callable[[int], np.random.Generator]


def _check_matching(pairs: list[tuple[int, int]], proposers: AbstractSet[int]) -> None:
    seen: set[int] = set()
    for proposer, acceptor in pairs:
        if proposer in seen or acceptor in seen:
            raise MatchingViolationError(f"Node appears in more than one connection: {(proposer, acceptor)}")
        if acceptor in proposers:
            raise MatchingViolationError(f"Proposer {acceptor} accepted a connection")
        seen.update((proposer, acceptor))


def resolve_connections(
        proposals: Mapping[int, int],
        listeners: AbstractSet[int],
        rng: RngSource,
) -> list[tuple[int, int]]:
    """
    Return the formed (proposer, acceptor) pairs.

    Proposals to a node that is itself proposing fail. Listeners are visited in
    ascending id order; a listener with several incoming proposals picks one
    uniformly, drawing from ``rng(listener)`` when *rng* is callable.
    """
    overlap = set(proposals) & set(listeners)
    if overlap:
        raise MalformedProposalError(f"Nodes both propose and listen: {sorted(overlap)}")

    incoming: dict[int, list[int]] = defaultdict(list)
    for proposer, target in proposals.items():
        if target == proposer:
            raise MalformedProposalError(f"Node {proposer} proposed to itself")
        if target in listeners:
            incoming[target].append(proposer)
        elif target not in proposals:
            raise MalformedProposalError(f"Node {proposer} proposed to {target}, which neither listens nor proposes")

    pairs: list[tuple[int, int]] = []
    for listener in sorted(incoming):
        candidates = sorted(incoming[listener])
        if len(candidates) == 1:
            chosen = candidates[0]
        else:
            draw = rng(listener) if callable(rng) else rng
            chosen = candidates[int(draw.integers(len(candidates)))]
        pairs.append((chosen, listener))

    _check_matching(pairs, set(proposals))
    return pairs
