import math
from fractions import Fraction

import pytest

from mobile_gossip.errors import ConfigError, DisconnectedGraphError, GraphError, SizeLimitError
from mobile_gossip.graph import (
    INFINITY,
    DynamicTopology,
    Snapshot,
    StaticTopology,
    diameter,
    generate,
    graph_stats,
    load_topology,
    max_degree,
    parse_tau,
    save_topology,
    topology_from_dict,
    two_star_centers,
    validate_stability,
    vertex_expansion_estimate,
    vertex_expansion_exact,
)


# --- construction ---

def test_self_loop_rejected():
    with pytest.raises(GraphError, match="Self-loop"):
        StaticTopology(3, [(0, 1), (1, 1)])


def test_duplicate_edge_rejected():
    with pytest.raises(GraphError, match="Duplicate"):
        StaticTopology(3, [(0, 1), (1, 0)])


def test_edge_outside_range_rejected():
    with pytest.raises(GraphError):
        StaticTopology(3, [(0, 3)])


def test_single_node_rejected():
    with pytest.raises(GraphError):
        StaticTopology(1, [])


# --- expansion ---

@pytest.mark.parametrize("n", range(4, 13))
def test_exact_expansion_hand_values(static_graph, n):
    half = n // 2
    assert vertex_expansion_exact(static_graph("complete", n=n)) == Fraction(n - half, half)
    assert vertex_expansion_exact(static_graph("ring", n=n)) == Fraction(2, half)
    assert vertex_expansion_exact(static_graph("star", n=n)) == Fraction(1, half)


def test_exact_expansion_examples(static_graph, ring8):
    assert vertex_expansion_exact(static_graph("complete", n=4)) == 1
    assert vertex_expansion_exact(ring8) == Fraction(1, 2)
    assert vertex_expansion_exact(static_graph("star", n=8)) == Fraction(1, 4)


def test_exact_expansion_size_limit(static_graph):
    with pytest.raises(SizeLimitError):
        vertex_expansion_exact(static_graph("complete", n=21))


def test_expansion_rejects_disconnected():
    g = StaticTopology(4, [(0, 1), (2, 3)])
    with pytest.raises(DisconnectedGraphError):
        vertex_expansion_exact(g)
    with pytest.raises(DisconnectedGraphError):
        vertex_expansion_estimate(g, trials=10)


def test_estimate_finds_ring_optimum(ring8):
    assert vertex_expansion_estimate(ring8, trials=2000, rng_seed=1) == 0.5


def test_estimate_on_short_path(static_graph):
    assert vertex_expansion_estimate(static_graph("path", n=3), trials=100) == 1.0


@pytest.mark.parametrize(
    "kind, params",
    [
        ("complete", {"n": 6}),
        ("ring", {"n": 9}),
        ("star", {"n": 7}),
        ("two_stars", {"delta": 3}),
        ("random_regular", {"n": 10, "d": 3}),
        ("random_connected", {"n": 10, "p": 0.4}),
    ],
)
def test_estimate_never_below_exact(kind, params):
    g = generate(kind, params, rng_seed=5).topology_at(1)
    exact = vertex_expansion_exact(g)
    for seed in range(3):
        assert vertex_expansion_estimate(g, trials=200, rng_seed=seed) >= float(exact) - 1e-12


# --- degree and diameter ---

def test_degree_and_diameter_examples(static_graph, ring8):
    k4 = static_graph("complete", n=4)
    star = static_graph("star", n=8)
    assert (max_degree(k4), max_degree(ring8), max_degree(star)) == (3, 2, 7)
    assert diameter(k4) == 1
    assert diameter(ring8) == 4
    assert diameter(static_graph("path", n=5)) == 4


def test_diameter_rejects_disconnected():
    with pytest.raises(DisconnectedGraphError):
        diameter(StaticTopology(4, [(0, 1), (2, 3)]))


@pytest.mark.parametrize(
    "kind, params",
    [
        ("complete", {"n": 16}),
        ("ring", {"n": 16}),
        ("star", {"n": 16}),
        ("path", {"n": 16}),
        ("two_stars", {"delta": 7}),
        ("random_regular", {"n": 16, "d": 3}),
        ("random_connected", {"n": 16, "p": 0.3}),
    ],
)
def test_diameter_bounded_by_expansion(kind, params):
    g = generate(kind, params, rng_seed=2).topology_at(1)
    assert diameter(g) * float(vertex_expansion_exact(g)) <= 2 * math.log2(g.n)


# --- generators ---

def test_two_stars_shape():
    g = generate("two_stars", {"delta": 4}).topology_at(1)
    a, b = two_star_centers(4)
    assert g.n == 10
    assert len(g.edges) == 9
    assert max_degree(g) == 5
    assert g.degree(a) == g.degree(b) == 5
    assert (min(a, b), max(a, b)) in g.edges


def test_ring_is_static():
    d = generate("ring", {"n": 8})
    assert d.tau == INFINITY and d.is_static
    assert len(d.snapshots) == 1
    assert len(d.topology_at(1000).edges) == 8


@pytest.mark.parametrize(
    "kind, params",
    [
        ("complete", {"n": 5}),
        ("ring", {"n": 5}),
        ("star", {"n": 5}),
        ("path", {"n": 5}),
        ("two_stars", {"delta": 2}),
        ("random_connected", {"n": 12, "p": 0.2}),
        ("random_regular", {"n": 12, "d": 3}),
    ],
)
def test_generated_graphs_connected_without_loops(kind, params):
    g = generate(kind, params, rng_seed=11).topology_at(1)
    assert g.is_connected
    assert all(u != v for u, v in g.edges)


def test_fresh_random_each_tau_snapshots():
    d = generate("fresh_random_each_tau", {"n": 16, "p": 0.3, "tau": 2, "horizon": 5}, rng_seed=4)
    assert [s.from_round for s in d.snapshots] == [1, 3, 5, 7, 9]
    assert validate_stability(d)
    assert d.topology_at(4) is d.snapshots[1].topology
    assert d.topology_at(13) is d.snapshots[6].topology


def test_fresh_random_each_tau_is_deterministic():
    params = {"n": 12, "p": 0.4, "tau": 3}
    a = generate("fresh_random_each_tau", params, rng_seed=9)
    b = generate("fresh_random_each_tau", params, rng_seed=9)
    assert [a.topology_at(r).edges for r in (1, 4, 7)] == [b.topology_at(r).edges for r in (1, 4, 7)]


def test_random_regular_is_deterministic():
    a = generate("random_regular", {"n": 12, "d": 4}, rng_seed=3)
    b = generate("random_regular", {"n": 12, "d": 4}, rng_seed=3)
    assert a.topology_at(1).edges == b.topology_at(1).edges


@pytest.mark.parametrize(
    "kind, params",
    [
        ("two_stars", {"delta": 1}),
        ("ring", {"n": 2}),
        ("random_regular", {"n": 5, "d": 3}),
        ("random_connected", {"n": 5, "p": 0.0}),
        ("fresh_random_each_tau", {"n": 5, "p": 0.5, "tau": INFINITY}),
        ("hypercube", {"n": 8}),
    ],
)
def test_invalid_generator_params(kind, params):
    with pytest.raises(ConfigError):
        generate(kind, params)


# --- stability ---

def _snapshots(n, rounds):
    g = StaticTopology(n, [(i, i + 1) for i in range(n - 1)])
    return [Snapshot(r, g) for r in rounds]


def test_stability_examples(ring8):
    assert validate_stability(DynamicTopology.static(ring8))
    assert not validate_stability(DynamicTopology(4, 3, _snapshots(4, [1, 2])))
    assert validate_stability(DynamicTopology(4, 3, _snapshots(4, [1, 4, 7])))


def test_stability_reports_disconnected_snapshot():
    broken = StaticTopology(4, [(0, 1), (2, 3)])
    d = DynamicTopology(4, 2, _snapshots(4, [1]) + [Snapshot(3, broken)])
    report = validate_stability(d)
    assert not report
    assert any("disconnected" in reason for reason in report.reasons)


# --- files and stats ---

def test_parse_tau():
    assert parse_tau("inf") == INFINITY
    assert parse_tau("3") == 3
    assert parse_tau(None) == INFINITY
    with pytest.raises(GraphError):
        parse_tau(0)


def test_topology_file_round_trip(tmp_path):
    d = generate("fresh_random_each_tau", {"n": 8, "p": 0.5, "tau": 2, "horizon": 3}, rng_seed=1)
    path = tmp_path / "g.json"
    save_topology(d, path)
    loaded = load_topology(path)
    assert loaded.tau == 2
    assert [s.from_round for s in loaded.snapshots] == [1, 3, 5]
    assert [s.topology.edges for s in loaded.snapshots] == [s.topology.edges for s in d.snapshots]


def test_loader_enforces_invariants():
    with pytest.raises(GraphError, match="disconnected"):
        topology_from_dict({"n": 4, "tau": "inf", "snapshots": [{"from_round": 1, "edges": [[0, 1], [2, 3]]}]})
    with pytest.raises(GraphError):
        topology_from_dict({"n": 3, "tau": "inf", "snapshots": [{"from_round": 1, "edges": [[0, 0]]}]})
    with pytest.raises(GraphError, match="Malformed"):
        topology_from_dict({"n": 3})


def test_graph_stats_ring8(ring8):
    assert graph_stats(ring8).describe() == "alpha=0.5 delta=2 diameter=4"


def test_graph_stats_estimates_large_graphs(static_graph):
    stats = graph_stats(static_graph("ring", n=30), trials=500)
    assert stats.alpha_is_estimate
    assert "(estimate)" in stats.describe()
    assert stats.alpha >= 2 / 15


def test_graph_stats_dynamic_takes_extremes():
    d = generate("fresh_random_each_tau", {"n": 10, "p": 0.4, "tau": 1, "horizon": 3}, rng_seed=2)
    per_snapshot = [graph_stats(s.topology) for s in d.snapshots]
    stats = graph_stats(d)
    assert stats.diameter is None
    assert stats.alpha == min(s.alpha for s in per_snapshot)
    assert stats.delta == max(s.delta for s in per_snapshot)
