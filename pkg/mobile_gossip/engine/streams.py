"""
Derived random streams.

Every random choice in a trial comes from a generator seeded by hashing
(root seed, purpose label, round, node ...) through numpy's SeedSequence, so
outcomes do not depend on the order in which nodes are visited.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field

import numpy as np


def purpose_label(purpose: str) -> int:
    return zlib.crc32(purpose.encode("utf-8"))


def derive_rng(root_seed: int, purpose: str, *keys: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(root_seed), purpose_label(purpose), *map(int, keys)]))


def derive_seed(root_seed: int, purpose: str, *keys: int) -> int:
    """A 63-bit integer seed derived like ``derive_rng``."""
    state = np.random.SeedSequence([int(root_seed), purpose_label(purpose), *map(int, keys)]).generate_state(
        1, dtype=np.uint64
    )
    return int(state[0]) >> 1


@dataclass(frozen=True)
class NodeStreams:
    """
    Per-node view of the trial's derived streams.

    ``rng(purpose, round_)`` is a fresh generator keyed by the round;
    ``stream(purpose)`` is one long-lived generator per purpose, consumed only
    by this node in round order.
    """
    root_seed: int
    node: int
    _streams: dict[str, np.random.Generator] = field(default_factory=dict, compare=False, repr=False)

    def rng(self, purpose: str, round_: int = 0) -> np.random.Generator:
        return derive_rng(self.root_seed, purpose, round_, self.node)

    def stream(self, purpose: str) -> np.random.Generator:
        if purpose not in self._streams:
            self._streams[purpose] = derive_rng(self.root_seed, f"{purpose}/stream", self.node)
        return self._streams[purpose]


@dataclass(frozen=True)
class TrialStreams:
    root_seed: int

    def for_node(self, node: int) -> NodeStreams:
        return NodeStreams(self.root_seed, node)

    def rng(self, purpose: str, *keys: int) -> np.random.Generator:
        return derive_rng(self.root_seed, purpose, *keys)

    def pair_rng(self, round_: int, u: int, v: int) -> np.random.Generator:
        """Stream shared by both endpoints of a connection, independent of who proposed."""
        a, b = (u, v) if u < v else (v, u)
        return derive_rng(self.root_seed, "pair", round_, a, b)
