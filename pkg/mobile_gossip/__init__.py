"""
Gossip in the mobile telephone model: topologies, the round engine, the
BlindMatch / SharedBit / SimSharedBit / CrowdedBin / PPUSH algorithms and an
experiment harness.
"""

from mobile_gossip.harness import ExperimentConfig, ExperimentResult
from mobile_gossip.main import generate_graph, replay, run, stats, sweep

__all__ = ["ExperimentConfig", "ExperimentResult", "generate_graph", "replay", "run", "stats", "sweep"]
__version__ = "1.0.0"
