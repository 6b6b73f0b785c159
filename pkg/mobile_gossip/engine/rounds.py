"""Synchronous round execution of the mobile telephone model."""
from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field
from typing import Callable, Sequence

from mobile_gossip.engine.behavior import NodeBehavior
from mobile_gossip.engine.ledger import BudgetLedger, Connection
from mobile_gossip.engine.matching import resolve_connections
from mobile_gossip.engine.models import NodeState, NodeView, RoundOutcome, SimConfig, TrialRecord
from mobile_gossip.engine.streams import TrialStreams
from mobile_gossip.errors import ConfigError, GraphError, MalformedProposalError, TagLengthError
from mobile_gossip.graph import DynamicTopology, StaticTopology, validate_stability
from mobile_gossip.metrics import potential

logger = logging.getLogger(__name__)

StopRule = Callable[["WorldState"], bool]
RoundObserver = Callable[["WorldState", RoundOutcome], None]


def assign_uids(config: SimConfig, streams: TrialStreams) -> tuple[int, ...]:
    """Node i gets UID i+1, or a random injection [n] -> [N] when requested."""
    if not config.random_uids:
        return tuple(range(1, config.n + 1))
    picks = streams.rng("uids").choice(config.N, size=config.n, replace=False) + 1
    return tuple(int(x) for x in picks)


def place_tokens(uids: Sequence[int], k: int, holders: Sequence[int] | None = None) -> list[set[int]]:
    """
    Initial token sets: each holder node starts with its own UID as token.
    Default holders are nodes 0..k-1.
    """
    n = len(uids)
    if not 0 <= k <= n:
        raise ConfigError(f"k: must be in [0, n={n}], got {k}")
    holders = list(range(k)) if holders is None else list(holders)
    if len(holders) != k or len(set(holders)) != k:
        raise ConfigError(f"holders: need {k} distinct nodes, got {holders}")
    sets: list[set[int]] = [set() for _ in range(n)]
    for node in holders:
        sets[node].add(uids[node])
    return sets


@dataclass
class WorldState:
    config: SimConfig
    uids: tuple[int, ...]
    states: list[NodeState]
    k: int
    streams: TrialStreams
    round: int = 0
    index_of: dict[int, int] = field(default_factory=dict)
    _view_cache: tuple[StaticTopology, list[tuple[int, ...]]] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        self.index_of = {uid: i for i, uid in enumerate(self.uids)}

    @property
    def token_sets(self) -> list[set[int]]:
        return [s.tokens for s in self.states]

    @property
    def phi(self) -> int:
        return potential(self.token_sets, self.k)

    def neighbor_uids(self, topology: StaticTopology) -> list[tuple[int, ...]]:
        if self._view_cache is None or self._view_cache[0] is not topology:
            nbrs = [tuple(self.uids[v] for v in topology.adjacency[u]) for u in range(topology.n)]
            self._view_cache = (topology, nbrs)
        return self._view_cache[1]


def build_world(
        config: SimConfig,
        behavior: NodeBehavior,
        k: int,
        holders: Sequence[int] | None = None,
        initial_tokens: Sequence[set[int]] | None = None,
) -> WorldState:
    streams = TrialStreams(config.rng_seed)
    uids = assign_uids(config, streams)
    token_sets = list(initial_tokens) if initial_tokens is not None else place_tokens(uids, k, holders)
    behavior.prepare(config)
    states = [
        behavior.init_state(uids[i], token_sets[i], streams.for_node(i))
        for i in range(config.n)
    ]
    return WorldState(config=config, uids=uids, states=states, k=k, streams=streams)


def run_round(world: WorldState, behavior: NodeBehavior, topology: StaticTopology) -> RoundOutcome:
    """
    Execute one round: tags, scan, actions, matching, connections, phi.
    Budget overflows, bad tags and proposals to non-neighbors raise.
    """
    config = world.config
    r = world.round + 1
    n = config.n

    # (1) tags
    tags: dict[int, str] = {}
    for state in world.states:
        tag = behavior.choose_tag(r, state)
        if len(tag) != config.b or tag.strip("01"):
            raise TagLengthError(f"Node {state.uid} advertised {tag!r}, expected {config.b} bits")
        tags[state.uid] = tag

    # (2) views from the same tag snapshot, (3) actions
    neighbor_uids = world.neighbor_uids(topology)
    proposals: dict[int, int] = {}
    listeners: set[int] = set()
    for i, state in enumerate(world.states):
        view = NodeView(my_uid=state.uid, neighbor_uids=neighbor_uids[i], tags=tags)
        target = behavior.choose_action(r, state, view)
        if target is None:
            listeners.add(state.uid)
        elif target not in neighbor_uids[i]:
            raise MalformedProposalError(f"Node {state.uid} proposed to non-neighbor {target}")
        else:
            proposals[state.uid] = target

    # (4) matching
    index_of = world.index_of
    matching = resolve_connections(
        proposals,
        listeners,
        lambda listener: world.streams.rng("accept", r, index_of[listener]),
    ) if proposals else []

    # (5) connections
    transfers = []
    bits_used: dict[tuple[int, int], int] = {}
    for proposer, acceptor in matching:
        p, a = index_of[proposer], index_of[acceptor]
        connection = Connection(
            round=r,
            proposer=world.states[p],
            acceptor=world.states[a],
            ledger=BudgetLedger(config.token_cap, config.bit_cap),
            rng=world.streams.pair_rng(r, p, a),
        )
        behavior.on_connect(r, connection)
        transfers.extend(connection.moves)
        bits_used[(proposer, acceptor)] = connection.ledger.bits_used

    for state in world.states:
        behavior.on_round_end(r, state)

    world.round = r
    assert len(world.states) == n
    return RoundOutcome(
        round=r,
        tags=tags,
        proposals=proposals,
        matching=matching,
        transfers=transfers,
        bits_used=bits_used,
        phi_after=world.phi,
        events=behavior.drain_events(),
    )


def _hash_outcome(digest, outcome: RoundOutcome) -> None:
    digest.update(
        repr((
            outcome.round,
            "".join(outcome.tags[uid] for uid in sorted(outcome.tags)),
            sorted(outcome.proposals.items()),
            outcome.matching,
            [tuple(m) for m in outcome.transfers],
            outcome.phi_after,
        )).encode("utf-8")
    )


def run_trial(
        config: SimConfig,
        behavior: NodeBehavior,
        topology: DynamicTopology,
        stop: StopRule,
        k: int | None = None,
        holders: Sequence[int] | None = None,
        initial_tokens: Sequence[set[int]] | None = None,
        trial: int = 0,
        keep_trace: bool = False,
        observer: RoundObserver | None = None,
        world: WorldState | None = None,
) -> TrialRecord:
    """
    Run rounds 1..max_rounds, stopping early once *stop* holds.
    Reaching max_rounds is recorded as DNF, not raised.
    """
    if topology.n != config.n:
        raise ConfigError(f"n: topology has {topology.n} nodes, config says {config.n}")
    if topology.factory is None:
        report = validate_stability(topology)
        if not report:
            raise GraphError("Topology violates its stability factor: " + "; ".join(report.reasons))

    if world is None:
        k = config.n if k is None else k
        world = build_world(config, behavior, k, holders, initial_tokens)

    digest = hashlib.blake2b(digest_size=16)
    phi_trajectory = [world.phi]
    outcomes: list[RoundOutcome] | None = [] if keep_trace else None
    connections = 0
    bits_total = 0
    completion: int | None = 0 if stop(world) else None

    while completion is None and world.round < config.max_rounds:
        snapshot = topology.topology_at(world.round + 1)
        if not snapshot.is_connected:
            raise GraphError(f"Snapshot for round {world.round + 1} is disconnected")
        outcome = run_round(world, behavior, snapshot)

        _hash_outcome(digest, outcome)
        phi_trajectory.append(outcome.phi_after)
        connections += len(outcome.matching)
        bits_total += sum(outcome.bits_used.values())
        for event in outcome.events:
            logger.debug("trial %d round %d: %s", trial, outcome.round, event)
        if outcomes is not None:
            outcomes.append(outcome)
        if observer is not None:
            observer(world, outcome)
        if stop(world):
            completion = outcome.round

    if completion is None:
        logger.info("trial %d did not finish within %d rounds (phi=%d)", trial, config.max_rounds, world.phi)

    return TrialRecord(
        trial=trial,
        completion_round=completion,
        rounds_run=world.round,
        phi_trajectory=phi_trajectory,
        connections=connections,
        bits_total=bits_total,
        trace_hash=digest.hexdigest(),
        outcomes=outcomes,
    )
