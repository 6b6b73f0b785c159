"""Completion predicates and analysis quantities over token-set states."""

from mobile_gossip.metrics.eps import (
    EpsCompletionTracker,
    earliest_eps_round,
    is_eps_gossip_complete,
    mutual_knowledge_graph,
    required_size,
)
from mobile_gossip.metrics.gossip import (
    coalition,
    frequency_multiset,
    is_gossip_complete,
    normalise_epsilon,
    potential,
)
from mobile_gossip.metrics.models import SOLVED, FrequencyEntry, FrequencyMultiset, Solved

__all__ = [
    "SOLVED",
    "EpsCompletionTracker",
    "FrequencyEntry",
    "FrequencyMultiset",
    "Solved",
    "coalition",
    "earliest_eps_round",
    "frequency_multiset",
    "is_eps_gossip_complete",
    "is_gossip_complete",
    "mutual_knowledge_graph",
    "normalise_epsilon",
    "potential",
    "required_size",
]
