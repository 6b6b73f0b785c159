"""
Counter-mode expansion of a short seed into a long pseudorandom bit stream.

Block i of the stream is the 512-bit BLAKE2b digest of (seed bytes, i).
Blocks are cached, so lazily reading a long stream group by group only
hashes each block once.
"""

from __future__ import annotations

import hashlib
from functools import lru_cache

import numpy as np

from mobile_gossip.config import EXPANDER_BLOCK_BITS

_DIGEST_BYTES = EXPANDER_BLOCK_BITS // 8


@lru_cache(maxsize=8192)
def expander_block(key: bytes, index: int) -> np.ndarray:
    digest = hashlib.blake2b(key + index.to_bytes(8, "big"), digest_size=_DIGEST_BYTES).digest()
    block = np.unpackbits(np.frombuffer(digest, dtype=np.uint8))
    block.flags.writeable = False
    return block


def expand_bits(key: bytes, start: int, stop: int) -> np.ndarray:
    """Bits [start, stop) of the stream keyed by *key*."""
    if start < 0 or stop < start:
        raise ValueError(f"Invalid bit range [{start}, {stop})")
    if stop == start:
        return np.zeros(0, dtype=np.uint8)
    first, last = start // EXPANDER_BLOCK_BITS, (stop - 1) // EXPANDER_BLOCK_BITS
    blocks = np.concatenate([expander_block(key, i) for i in range(first, last + 1)])
    offset = first * EXPANDER_BLOCK_BITS
    return blocks[start - offset:stop - offset]


def hash_u64(*parts: int) -> int:
    """64-bit hash of a tuple of integers, used for rejection-sampling retries."""
    payload = b"".join(int(p).to_bytes(8, "big", signed=True) for p in parts)
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "big")
