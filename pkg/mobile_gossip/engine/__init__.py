"""Round engine of the mobile telephone model."""

from mobile_gossip.engine.behavior import NodeBehavior
from mobile_gossip.engine.ledger import BudgetLedger, Connection, TokenMove
from mobile_gossip.engine.matching import resolve_connections
from mobile_gossip.engine.models import NodeState, NodeView, RoundOutcome, SimConfig, TrialRecord, is_power_of_two
from mobile_gossip.engine.rounds import WorldState, assign_uids, build_world, place_tokens, run_round, run_trial
from mobile_gossip.engine.streams import NodeStreams, TrialStreams, derive_rng, derive_seed

__all__ = [
    "BudgetLedger",
    "Connection",
    "NodeBehavior",
    "NodeState",
    "NodeStreams",
    "NodeView",
    "RoundOutcome",
    "SimConfig",
    "TokenMove",
    "TrialRecord",
    "TrialStreams",
    "WorldState",
    "assign_uids",
    "build_world",
    "derive_rng",
    "derive_seed",
    "is_power_of_two",
    "place_tokens",
    "resolve_connections",
    "run_round",
    "run_trial",
]
