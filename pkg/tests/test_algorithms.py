import statistics

import numpy as np
import pytest

from mobile_gossip.algorithms import (
    BlindMatch,
    CrowdedBin,
    PPush,
    Segment,
    SharedBit,
    SimSharedBit,
    behavior_for,
    instance_position,
    is_good_configuration,
    parity,
    phase_length,
    random_configuration,
    schedule_map,
)
from mobile_gossip.engine import NodeView, SimConfig, build_world, run_trial
from mobile_gossip.errors import ConfigError
from mobile_gossip.graph import INFINITY, generate
from mobile_gossip.harness import ExperimentConfig, run_experiment
from mobile_gossip.metrics import is_gossip_complete
from mobile_gossip.randomness import Seed, SharedString, token_bit


def gossip_done(world):
    return is_gossip_complete(world.token_sets, world.k)


def never(world):
    return False


def small_string(groups=2, seed=0):
    """Explicit shared string for N=4 with *groups* groups."""
    bits = np.random.default_rng(seed).integers(0, 2, size=groups * 4 * 3)
    return SharedString.from_bits(4, bits, groups=groups)


# --- SharedBit ---

def test_parity():
    bits = np.array([1, 0, 1, 1])
    assert parity(bits, {1, 3}) == 0
    assert parity(bits, {4}) == 1
    assert parity(bits, set()) == 0


def test_sharedbit_tag_is_token_bit_parity():
    behavior = SharedBit()
    world = build_world(SimConfig(N=8, n=8, rng_seed=3), behavior, k=8)
    shared = behavior.shared
    for state in world.states:
        assert behavior.choose_tag(1, state) == str(token_bit(shared, 1, state.uid))

    state = world.states[0]
    state.tokens.update({2, 3})
    for r in (1, 2, 3):
        expected = sum(token_bit(shared, r, t) for t in state.tokens) % 2
        assert behavior.choose_tag(r, state) == str(expected)
    state.tokens.clear()
    assert behavior.choose_tag(1, state) == "0"


def test_sharedbit_pads_wide_tags():
    behavior = SharedBit()
    world = build_world(SimConfig(N=4, n=4, b=3), behavior, k=4)
    assert all(len(behavior.choose_tag(1, s)) == 3 for s in world.states)


def test_exhaustion_wraps():
    behavior = SharedBit(shared=small_string(), exhaustion="wrap")
    record = run_trial(SimConfig(N=4, n=4, max_rounds=5), behavior, generate("complete", {"n": 4}), never)
    assert record.rounds_run == 5
    assert behavior.wraps == 2
    assert behavior.extras() == {"wraps": 2}


def test_exhaustion_halts():
    behavior = SharedBit(shared=small_string(), exhaustion="halt")
    record = run_trial(
        SimConfig(N=4, n=4, max_rounds=5), behavior, generate("complete", {"n": 4}), never, keep_trace=True
    )
    for outcome in record.outcomes[2:]:
        assert outcome.proposals == {}
        assert set(outcome.tags.values()) == {"0"}


def test_exhaustion_falls_back_to_blindmatch():
    behavior = SharedBit(shared=small_string(), exhaustion="blindmatch")
    record = run_trial(
        SimConfig(N=4, n=4, max_rounds=12, rng_seed=1), behavior, generate("complete", {"n": 4}), never,
        keep_trace=True,
    )
    assert any(outcome.proposals for outcome in record.outcomes[2:])


def test_unknown_exhaustion_policy():
    with pytest.raises(ConfigError):
        SharedBit(exhaustion="restart")


def test_shared_string_must_match_n():
    behavior = SharedBit(shared=SharedString.from_seed(8, Seed(1, 36)))
    with pytest.raises(ConfigError, match="N:"):
        behavior.prepare(SimConfig(N=4, n=4))


def test_shared_seed_fixes_the_string():
    seed = Seed.random(8, np.random.default_rng(0))
    a, b = SharedBit(shared_seed=seed), SharedBit(shared_seed=seed)
    a.prepare(SimConfig(N=8, n=8, rng_seed=1))
    b.prepare(SimConfig(N=8, n=8, rng_seed=2))
    assert a.shared.fingerprint() == b.shared.fingerprint()


def test_sharedbit_completes_small_complete_graph():
    n = 8
    config = ExperimentConfig(algorithm="sharedbit", graph_params={"n": n}, trials=30, max_rounds=32 * n * n)
    result = run_experiment(config)
    assert result.summary["success_fraction"] == 1.0


def test_unequal_token_sets_disagree_half_the_time():
    rng = np.random.default_rng(8)
    a, b = {1, 4, 9}, {4, 12}
    strings = 10_000
    differ = 0
    for _ in range(strings):
        bits = SharedString.from_seed(16, Seed.random(16, rng)).group(1)[:, 0]
        differ += parity(bits, a) != parity(bits, b)
    assert abs(differ / strings - 0.5) <= 0.02


def test_equal_token_sets_share_a_tag():
    behavior = SharedBit()
    world = build_world(SimConfig(N=16, n=16, rng_seed=9), behavior, k=16)
    holders = world.states[:4]
    for state in holders:
        state.tokens = {2, 7, 11}
    for r in range(1, 200):
        assert len({behavior.choose_tag(r, state) for state in holders}) == 1


def test_sharedbit_proposals_are_legal():
    behavior = SharedBit()
    config = SimConfig(N=16, n=16, rng_seed=4, max_rounds=32 * 16 * 16)
    topology = generate("random_regular", {"n": 16, "d": 4}, rng_seed=4)
    world = build_world(config, behavior, k=16)
    neighbors = {uid: set(nbrs) for uid, nbrs in zip(world.uids, world.neighbor_uids(topology.topology_at(1)))}

    record = run_trial(config, behavior, topology, gossip_done, world=world, keep_trace=True)
    assert any(outcome.proposals for outcome in record.outcomes)
    for outcome in record.outcomes:
        for proposer, target in outcome.proposals.items():
            assert outcome.tags[proposer] == "1"
            assert outcome.tags[target] == "0"
            assert target in neighbors[proposer]


def _sharedbit_runs(kind, n, trials=200):
    params = {"n": n, "p": 0.5} if kind == "fresh_random_each_tau" else {"n": n}
    config = ExperimentConfig(
        algorithm="sharedbit",
        graph_kind=kind,
        graph_params=params,
        tau=1 if kind == "fresh_random_each_tau" else INFINITY,
        trials=trials,
        max_rounds=32 * n * n,
    )
    return run_experiment(config).records


@pytest.mark.slow
@pytest.mark.parametrize("kind", ["complete", "fresh_random_each_tau"])
@pytest.mark.parametrize("n", [8, 16])
def test_sharedbit_round_budget(kind, n):
    records = _sharedbit_runs(kind, n)
    within = sum(1 for r in records if not r.dnf and r.completion_round <= 32 * n * n)
    assert within / len(records) >= 0.95

    productive = active = 0
    for record in records:
        phi = record.phi_trajectory
        for before, after in zip(phi, phi[1:]):
            if before > 0:
                active += 1
                productive += after < before
    assert productive / active >= 0.20


# --- SimSharedBit ---

@pytest.mark.parametrize("seed", range(3))
def test_simsharedbit_election_converges(seed):
    behavior = SimSharedBit()
    config = SimConfig(N=8, n=8, rng_seed=seed, max_rounds=400)
    run_trial(config, behavior, generate("complete", {"n": 8}), never)
    assert behavior.converged
    assert behavior.convergence_round is not None and behavior.convergence_round % 2 == 0
    leader = next(s for s in behavior.states if s.uid == 1)
    assert {s.payload for s in behavior.states} == {leader.own_seed}


def test_simsharedbit_candidates_only_decrease():
    behavior = SimSharedBit()
    run_trial(SimConfig(N=8, n=8, rng_seed=5, max_rounds=200), behavior, generate("ring", {"n": 8}), never)
    for state in behavior.states:
        uids = [uid for _, uid in state.candidate_history]
        assert all(b < a for a, b in zip(uids, uids[1:]))


def test_simsharedbit_needs_room_for_the_seed():
    with pytest.raises(ConfigError, match="bit_cap"):
        SimSharedBit().prepare(SimConfig(N=8, n=8, bit_cap=10))


def test_simsharedbit_gossips():
    config = SimConfig(N=8, n=8, rng_seed=2, max_rounds=4000)
    record = run_trial(config, SimSharedBit(), generate("complete", {"n": 8}), gossip_done)
    assert not record.dnf


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(100))
def test_simsharedbit_ring_agrees_on_one_string(seed):
    behavior = SimSharedBit()
    config = SimConfig(N=16, n=16, rng_seed=seed)
    record = run_trial(config, behavior, generate("ring", {"n": 16}), lambda world: behavior.converged)
    assert not record.dnf
    assert behavior.convergence_round <= config.max_rounds
    fingerprints = {behavior.string_for(s.payload).fingerprint() for s in behavior.states}
    assert len(fingerprints) == 1


# --- PPUSH ---

def test_ppush_extra_informed_nodes():
    behavior = PPush(informed_uids=[3])
    config = SimConfig(N=4, n=4, max_rounds=50)
    topology = generate("ring", {"n": 4})
    world = build_world(config, behavior, k=1)
    assert behavior.rumor == 1
    assert [behavior.is_informed(s) for s in world.states] == [True, False, True, False]

    record = run_trial(config, behavior, topology, gossip_done, world=world)
    assert record.phi_trajectory[0] == 2
    assert record.completion_round <= 2


def test_ppush_moves_only_the_rumor():
    config = SimConfig(N=8, n=8, rng_seed=4, max_rounds=500)
    record = run_trial(config, PPush(), generate("ring", {"n": 8}), gossip_done, k=1, keep_trace=True)
    assert not record.dnf
    assert all(move.token == 1 for outcome in record.outcomes for move in outcome.transfers)
    for outcome in record.outcomes:
        informed = {uid for uid, tag in outcome.tags.items() if tag == "1"}
        assert set(outcome.proposals) <= informed


def test_ppush_informs_only_through_connections():
    config = SimConfig(N=16, n=16, rng_seed=6, max_rounds=2000)
    topology = generate("random_regular", {"n": 16, "d": 4}, rng_seed=6)
    record = run_trial(config, PPush(), topology, gossip_done, k=1, keep_trace=True)
    assert not record.dnf

    informed = {uid for uid, tag in record.outcomes[0].tags.items() if tag == "1"}
    for outcome in record.outcomes:
        assert {uid for uid, tag in outcome.tags.items() if tag == "1"} == informed
        newly = {move.dest for move in outcome.transfers}
        expected = {acceptor for proposer, acceptor in outcome.matching if acceptor not in informed}
        assert newly == expected
        for move in outcome.transfers:
            assert (move.source, move.dest) in outcome.matching
            assert move.source in informed
        informed |= newly
    assert len(informed) == 16


def _ppush_completions(kind, trials, seed=0):
    config = ExperimentConfig(algorithm="ppush", graph_kind=kind, graph_params={"n": 64}, trials=trials, seed=seed)
    return [r.completion_round for r in run_experiment(config).records]


# Complete-graph cap calibrated once for n=64 and kept fixed.
PPUSH_COMPLETE_CAP = 360


def _check_ppush_expansion(trials):
    complete = _ppush_completions("complete", trials)
    ring = _ppush_completions("ring", trials)
    faster = sum(1 for c, r in zip(complete, ring) if c < r)
    assert faster / trials >= 0.9
    assert max(complete) <= PPUSH_COMPLETE_CAP


def test_ppush_faster_with_expansion():
    _check_ppush_expansion(20)


@pytest.mark.slow
def test_ppush_faster_with_expansion_full():
    _check_ppush_expansion(100)


# --- BlindMatch ---

@pytest.mark.slow
def test_blindmatch_two_stars_grows_with_delta():
    medians = []
    for delta in (4, 8, 16):
        config = ExperimentConfig(
            algorithm="blindmatch",
            graph_kind="two_stars",
            graph_params={"delta": delta},
            k=1,
            stop="reach",
            trials=400,
        )
        records = run_experiment(config).records
        assert all(not r.dnf for r in records)
        medians.append(statistics.median(r.completion_round for r in records))
    assert medians[1] / medians[0] >= 2.5
    assert medians[2] / medians[1] >= 2.5


def test_blindmatch_never_tags():
    behavior = BlindMatch()
    world = build_world(SimConfig(N=4, n=4, b=2), behavior, k=4)
    assert behavior.choose_tag(1, world.states[0]) == "00"


# --- CrowdedBin schedule ---

def test_schedule_map():
    assert schedule_map(1, 16) == (1, 1)
    assert schedule_map(4, 16) == (4, 1)
    assert schedule_map(5, 16) == (1, 2)
    assert schedule_map(8, 16) == (4, 2)
    with pytest.raises(ValueError):
        schedule_map(0, 16)
    with pytest.raises(ValueError):
        schedule_map(1, 12)


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_phase_length(j):
    assert phase_length(2 ** j, 4, 12, 16) == 12 * 5 * 2 ** j * 16


@pytest.mark.parametrize(
    "i, expected",
    [
        (1, (1, 1, 1, 1, Segment.TAG_BIT, 1)),
        (8, (1, 1, 1, 8, Segment.TAG_BIT, 8)),
        (9, (1, 1, 1, 9, Segment.PPUSH_ROUND, 1)),
        (10, (1, 1, 1, 10, Segment.PPUSH_ROUND, 2)),
        (11, (1, 1, 2, 1, Segment.TAG_BIT, 1)),
        (240, (1, 1, 24, 10, Segment.PPUSH_ROUND, 2)),
        (241, (1, 2, 1, 1, Segment.TAG_BIT, 1)),
        (481, (2, 1, 1, 1, Segment.TAG_BIT, 1)),
    ],
)
def test_instance_position(i, expected):
    # N=4, beta=4, gamma=12: 8 tag bits + 2 PPUSH rounds per block, 24 blocks per bin
    assert tuple(instance_position(i, 2, 4, 12, 4)) == expected


# --- CrowdedBin goodness ---

def test_good_configuration_example():
    report = is_good_configuration([1, 2, 3], [[1, 1], [1, 2], [2, 3]], k=3, N=4, beta=4, gamma=1)
    assert report.crowded_instances == [1]
    assert report.target_instance == 2
    assert report.unique_tags and report.good


def test_duplicate_tags_are_not_good():
    report = is_good_configuration([5, 5], [[1, 1], [2, 1]], k=2, N=4, beta=4, gamma=12)
    assert not report.unique_tags
    assert not report.good
    assert report.target_instance == 1


def test_bin_rows_need_every_instance():
    with pytest.raises(ValueError):
        is_good_configuration([1], [[1]], k=1, N=4, beta=4, gamma=12)


def test_no_crowded_bins_at_scale():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        tags, bins = random_configuration(64, 64, 4, rng)
        report = is_good_configuration(tags, bins, 64, 64, 4, 9)
        assert report.crowded_instances == []


# --- CrowdedBin behavior ---

def test_crowdedbin_constants_checked():
    with pytest.raises(ConfigError) as info:
        CrowdedBin(beta=3, gamma=11)
    assert len(info.value.errors) == 2
    CrowdedBin(beta=5, gamma=15, confidence=2)
    with pytest.raises(ConfigError):
        CrowdedBin(beta=4, gamma=15, confidence=2)


def test_crowdedbin_one_token_per_node():
    with pytest.raises(ConfigError, match="at most 1"):
        build_world(SimConfig(N=4, n=4), CrowdedBin(), k=4, initial_tokens=[{1, 2}, set(), {3}, {4}])


def test_crowdedbin_initial_state():
    behavior = CrowdedBin()
    world = build_world(SimConfig(N=16, n=8, rng_seed=2), behavior, k=5)
    holders = [s for s in world.states if s.tokens]
    assert len(holders) == 5
    for state in holders:
        assert 1 <= state.tag < 2 ** 16
        assert len(state.bin_choices) == 4
        assert all(1 <= b <= 2 ** j for j, b in enumerate(state.bin_choices, start=1))
        assert state.est == 1
    assert all(s.tag is None for s in world.states if not s.tokens)


def _activity_view():
    return NodeView(my_uid=1, neighbor_uids=(2,), tags={1: "0", 2: "1"})


def test_activity_raises_estimate():
    behavior = CrowdedBin()
    world = build_world(SimConfig(N=4, n=4), behavior, k=4)
    state = world.states[0]
    # global round 2 belongs to instance 2
    assert behavior.choose_action(2, state, _activity_view()) is None
    assert state.est == 2
    assert state.est_history[-1] == (2, 2)


def test_activity_waits_for_committed_phase():
    behavior = CrowdedBin()
    world = build_world(SimConfig(N=4, n=4), behavior, k=4)
    state = world.states[0]
    state.committed = 1
    behavior.choose_action(2, state, _activity_view())
    assert state.est == 1
    assert state.pending_est == 2


def _crowd(behavior, state, key):
    """Add gamma*log2 N fresh tags to bin *key*, crowding it."""
    state.merge(key, range(1000, 1000 + behavior.crowded_threshold))


def test_crowded_bin_upgrade_waits_for_phase_end():
    # N=4: instance 1's first bin ends at global round 479, its phase at 959
    behavior = CrowdedBin()
    world = build_world(SimConfig(N=4, n=4), behavior, k=4)
    state = world.states[0]
    state.committed = 1
    _crowd(behavior, state, (1, 1))

    behavior.on_round_end(479, state)
    assert state.est == 1
    assert state.pending_est == 2
    assert state.committed == 1

    behavior.on_round_end(959, state)
    assert state.est == 2
    assert state.pending_est is None
    assert state.committed is None
    assert state.est_history[-1] == (959, 2)


def test_uncrowded_bin_keeps_estimate():
    behavior = CrowdedBin()
    world = build_world(SimConfig(N=4, n=4), behavior, k=4)
    state = world.states[0]
    state.committed = 1
    state.merge((1, 1), range(1000, 1000 + behavior.crowded_threshold - 1 - len(state.bins[(1, 1)])))
    behavior.on_round_end(479, state)
    assert state.pending_est is None
    behavior.on_round_end(959, state)
    assert state.est == 1


def test_crowded_bin_at_maximum_estimate_warns(caplog):
    # global round 960 ends bin 2 of instance 2, the largest instance for N=4
    behavior = CrowdedBin()
    world = build_world(SimConfig(N=4, n=4), behavior, k=4)
    state = world.states[0]
    state.est = state.committed = 2
    _crowd(behavior, state, (2, 2))

    with caplog.at_level("WARNING", logger="mobile_gossip.algorithms.crowdedbin"):
        behavior.on_round_end(960, state)
    assert behavior.saturated_warnings == 1
    assert state.est == 2 and state.pending_est is None
    assert state.committed == 2
    assert "maximum estimate" in caplog.text
    assert behavior.extras()["saturated_warnings"] == 1


def _check_crowdedbin_trial(behavior, record):
    report = behavior.configuration()
    if report.unique_tags:
        assert not record.dnf
    for state in behavior.states:
        estimates = [est for _, est in state.est_history]
        assert all(b >= a for a, b in zip(estimates, estimates[1:]))
    if report.good:
        assert max(s.est for s in behavior.states) <= report.target_instance


def test_crowdedbin_small_ring():
    behavior = CrowdedBin(beta=6)
    config = SimConfig(N=4, n=4, rng_seed=1, max_rounds=20_000)
    record = run_trial(config, behavior, generate("ring", {"n": 4}), gossip_done)
    _check_crowdedbin_trial(behavior, record)
    assert set(behavior.extras()) >= {"target_instance", "good", "max_estimate", "saturated_warnings"}


@pytest.mark.slow
@pytest.mark.parametrize(
    "kind, params",
    [("ring", {"n": 16}), ("complete", {"n": 16}), ("random_regular", {"n": 16, "d": 4})],
)
@pytest.mark.parametrize("seed", range(2))
def test_crowdedbin_static_graphs(kind, params, seed):
    behavior = CrowdedBin(beta=4, gamma=12)
    config = SimConfig(N=16, n=16, rng_seed=seed, max_rounds=10 ** 6)
    record = run_trial(config, behavior, generate(kind, params, rng_seed=seed), gossip_done)
    _check_crowdedbin_trial(behavior, record)


# --- registry ---

@pytest.mark.parametrize(
    "algorithm, cls",
    [
        ("blindmatch", BlindMatch),
        ("sharedbit", SharedBit),
        ("simsharedbit", SimSharedBit),
        ("ppush", PPush),
        ("crowdedbin", CrowdedBin),
    ],
)
def test_behavior_for(algorithm, cls):
    assert isinstance(behavior_for(algorithm), cls)


def test_behavior_for_passes_options():
    behavior = behavior_for("sharedbit", shared_seed="0x00ab", exhaustion="halt")
    assert behavior.shared_seed == Seed(0xAB, 16)
    assert behavior.exhaustion == "halt"
    assert behavior_for("crowdedbin", beta=None).beta == 4


def test_behavior_for_rejects_bad_input():
    with pytest.raises(ConfigError, match="algorithm"):
        behavior_for("flood")
    with pytest.raises(ConfigError, match="shared_seed"):
        behavior_for("sharedbit", shared_seed="not-hex")
