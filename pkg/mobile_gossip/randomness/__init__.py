"""Shared random strings, their seeds, and the pseudorandom expander."""

from mobile_gossip.randomness.expander import expand_bits, hash_u64
from mobile_gossip.randomness.extraction import proposal_choice, token_bit
from mobile_gossip.randomness.models import Seed, SharedString, expand_seed, seed_length

__all__ = [
    "Seed",
    "SharedString",
    "expand_bits",
    "expand_seed",
    "hash_u64",
    "proposal_choice",
    "seed_length",
    "token_bit",
]
