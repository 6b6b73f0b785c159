"""Gossip behaviors for the round engine."""

from mobile_gossip.algorithms.base import run_transfer
from mobile_gossip.algorithms.blindmatch import BlindMatch
from mobile_gossip.algorithms.crowdedbin import CrowdedBin, CrowdedBinState
from mobile_gossip.algorithms.oracle import GoodnessReport, is_good_configuration, random_configuration, tag_space
from mobile_gossip.algorithms.ppush import PPush
from mobile_gossip.algorithms.registry import behavior_for
from mobile_gossip.algorithms.schedule import (
    Position,
    Segment,
    bin_length,
    block_length,
    instance_position,
    phase_length,
    schedule_map,
)
from mobile_gossip.algorithms.sharedbit import SharedBit, parity
from mobile_gossip.algorithms.simsharedbit import SimSharedBit, SimSharedBitState

__all__ = [
    "BlindMatch",
    "CrowdedBin",
    "CrowdedBinState",
    "GoodnessReport",
    "PPush",
    "Position",
    "Segment",
    "SharedBit",
    "SimSharedBit",
    "SimSharedBitState",
    "behavior_for",
    "bin_length",
    "block_length",
    "instance_position",
    "is_good_configuration",
    "parity",
    "phase_length",
    "random_configuration",
    "run_transfer",
    "schedule_map",
    "tag_space",
]
