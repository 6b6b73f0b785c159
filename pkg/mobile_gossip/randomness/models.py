"""Seeds and the shared string they label."""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

import numpy as np

from mobile_gossip.config import SEED_LENGTH_CONSTANT, SHARED_GROUP_CONSTANT
from mobile_gossip.errors import RoundExhaustedError
from mobile_gossip.randomness.expander import expand_bits
from mobile_gossip.transfer import log2_ceil


def seed_length(N: int) -> int:
    """Seed bits: SEED_LENGTH_CONSTANT * ceil(log2 N) ** 2."""
    return SEED_LENGTH_CONSTANT * log2_ceil(N) ** 2


@dataclass(frozen=True)
class Seed:
    value: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError(f"Seed length must be >= 1, got {self.length}")
        if not 0 <= self.value < 1 << self.length:
            raise ValueError(f"Seed value does not fit in {self.length} bits")

    @classmethod
    def random(cls, N: int, rng: np.random.Generator) -> "Seed":
        length = seed_length(N)
        bits = rng.integers(0, 2, size=length)
        return cls(int("".join(map(str, bits)), 2), length)

    def to_bytes(self) -> bytes:
        return self.length.to_bytes(2, "big") + self.value.to_bytes(math.ceil(self.length / 8), "big")

    def to_hex(self) -> str:
        return f"{self.value:0{math.ceil(self.length / 4)}x}"

    @classmethod
    def from_hex(cls, text: str, length: int | None = None) -> "Seed":
        text = text.strip().lower().removeprefix("0x")
        value = int(text, 16)
        return cls(value, length if length is not None else 4 * len(text))


def expand_seed(seed: Seed, length: int) -> np.ndarray:
    """The first *length* bits of the string labelled by *seed*."""
    return expand_bits(seed.to_bytes(), 0, length)


@dataclass(eq=False)
class SharedString:
    """
    Bit string of ``groups`` groups, each holding one bundle of
    ``bundle_bits`` bits per token in [N]. Bit ``offset`` of bundle t in
    group g sits at index (g-1)*N*bundle_bits + (t-1)*bundle_bits + offset.
    Backed either by a seed (expanded one group at a time) or by explicit bits.
    """
    N: int
    groups: int
    seed: Seed | None = None
    bits: np.ndarray | None = field(default=None, repr=False)
    _cached: tuple[int, np.ndarray] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if (self.seed is None) == (self.bits is None):
            raise ValueError("SharedString needs exactly one of seed or bits")
        if self.groups < 1:
            raise ValueError(f"groups must be >= 1, got {self.groups}")
        if self.bits is not None and len(self.bits) < self.length:
            raise ValueError(f"Need {self.length} bits for {self.groups} groups, got {len(self.bits)}")

    @classmethod
    def default_groups(cls, N: int) -> int:
        return SHARED_GROUP_CONSTANT * N * N

    @classmethod
    def from_seed(cls, N: int, seed: Seed, groups: int | None = None) -> "SharedString":
        return cls(N=N, groups=groups or cls.default_groups(N), seed=seed)

    @classmethod
    def from_bits(cls, N: int, bits, groups: int | None = None) -> "SharedString":
        bits = np.asarray(bits, dtype=np.uint8)
        bundle = log2_ceil(N) + 1
        return cls(N=N, groups=groups or len(bits) // (N * bundle), bits=bits)

    @property
    def bundle_bits(self) -> int:
        return log2_ceil(self.N) + 1

    @property
    def length(self) -> int:
        return self.groups * self.N * self.bundle_bits

    def index(self, group: int, token: int, offset: int) -> int:
        return (group - 1) * self.N * self.bundle_bits + (token - 1) * self.bundle_bits + offset

    def group(self, r: int) -> np.ndarray:
        """Group r as an (N, bundle_bits) array; row t-1 is token t's bundle."""
        if r < 1:
            raise ValueError(f"Group index must be >= 1, got {r}")
        if r > self.groups:
            raise RoundExhaustedError(f"Group {r} requested, string has {self.groups}")
        if self._cached is not None and self._cached[0] == r:
            return self._cached[1]
        start, stop = self.index(r, 1, 0), self.index(r + 1, 1, 0)
        if self.bits is not None:
            flat = self.bits[start:stop]
        else:
            flat = expand_bits(self.seed.to_bytes(), start, stop)
        block = flat.reshape(self.N, self.bundle_bits)
        self._cached = (r, block)
        return block

    def fingerprint(self, groups: int = 4) -> str:
        digest = hashlib.blake2b(digest_size=16)
        for r in range(1, min(groups, self.groups) + 1):
            digest.update(np.packbits(self.group(r)).tobytes())
        return digest.hexdigest()
