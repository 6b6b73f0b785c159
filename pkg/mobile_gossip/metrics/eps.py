"""eps-gossip: a large node subset whose members all know each other's tokens."""
from __future__ import annotations

import math
from typing import AbstractSet, Iterable, Sequence

import networkx as nx

from mobile_gossip.config import EPS_CLIQUE_MAX_N
from mobile_gossip.errors import SizeLimitError
from mobile_gossip.metrics.gossip import frequency_multiset

TokenSets = Sequence[AbstractSet[int]]


def required_size(n: int, epsilon: float) -> int:
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    return max(1, math.ceil(epsilon * n - 1e-9))


def mutual_knowledge_graph(token_sets: TokenSets, owners: Sequence[int]) -> nx.Graph:
    """Edge u-v iff u holds v's token and v holds u's. ``owners[u]`` is the token u started with."""
    g = nx.Graph()
    g.add_nodes_from(range(len(token_sets)))
    for u in range(len(token_sets)):
        for v in range(u + 1, len(token_sets)):
            if owners[v] in token_sets[u] and owners[u] in token_sets[v]:
                g.add_edge(u, v)
    return g


def _frequency_witness(token_sets: TokenSets, owners: Sequence[int], need: int) -> bool:
    for entry in frequency_multiset(token_sets):
        if entry.q < need:
            break
        holders = [owners[u] for u, tokens in enumerate(token_sets) if tokens == entry.tokens]
        if all(t in entry.tokens for t in holders):
            return True
    return False


def is_eps_gossip_complete(token_sets: TokenSets, owners: Sequence[int], epsilon: float) -> bool:
    """
    True iff some set of at least ceil(eps*n) nodes has pairwise mutual token
    knowledge. A group of identical token sets containing all its owners'
    tokens is accepted without a clique search.
    """
    n = len(token_sets)
    need = required_size(n, epsilon)
    if need <= 1 or _frequency_witness(token_sets, owners, need):
        return True
    if n > EPS_CLIQUE_MAX_N:
        raise SizeLimitError(f"Clique search limited to n <= {EPS_CLIQUE_MAX_N}, got n={n}")

    core = nx.k_core(mutual_knowledge_graph(token_sets, owners), need - 1)
    if core.number_of_nodes() < need:
        return False
    clique, size = nx.max_weight_clique(core, weight=None)
    return size >= need


class EpsCompletionTracker:
    """Records the first round in which the eps-gossip predicate holds; it stays true afterwards."""

    def __init__(self, owners: Sequence[int], epsilon: float) -> None:
        self.owners = list(owners)
        self.epsilon = epsilon
        self.round: int | None = None

    def update(self, round_: int, token_sets: TokenSets) -> bool:
        if self.round is None and is_eps_gossip_complete(token_sets, self.owners, self.epsilon):
            self.round = round_
        return self.round is not None


def earliest_eps_round(
        history: Iterable[tuple[int, TokenSets]],
        owners: Sequence[int],
        epsilon: float,
) -> int | None:
    tracker = EpsCompletionTracker(owners, epsilon)
    for round_, token_sets in history:
        if tracker.update(round_, token_sets):
            break
    return tracker.round
