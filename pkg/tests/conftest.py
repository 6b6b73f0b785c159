import pytest

from mobile_gossip.config import OUTPUT_DIR_ENV
from mobile_gossip.engine import SimConfig
from mobile_gossip.graph import StaticTopology, generate


@pytest.fixture(autouse=True)
def _no_output_dir(monkeypatch):
    monkeypatch.delenv(OUTPUT_DIR_ENV, raising=False)


@pytest.fixture
def static_graph():
    """Factory: the single snapshot of a generated static family."""
    def build(kind: str, **params) -> StaticTopology:
        return generate(kind, params).topology_at(1)
    return build


@pytest.fixture
def ring8(static_graph):
    return static_graph("ring", n=8)


@pytest.fixture
def k2():
    return generate("complete", {"n": 2})


@pytest.fixture
def exact_transfer_config():
    """K2 config whose transfer error is negligible."""
    def build(seed: int = 0, **overrides) -> SimConfig:
        return SimConfig(N=2, n=2, rng_seed=seed, transfer_epsilon=1e-9, **overrides)
    return build
