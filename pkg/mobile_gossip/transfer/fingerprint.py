"""
EQTest: randomized set-equality test with one-sided error.

A set S of tokens in [1, N] is fingerprinted as the polynomial
sum_{t in S} x**t evaluated modulo a prime q > 2N at a point x drawn from the
pair's shared stream. Two different sets give different polynomials of degree
<= N, which agree on at most N of the q - 1 >= 2N candidate points, so one
trial misses a difference with probability <= 1/2. Equal sets always agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import AbstractSet, NamedTuple

import numpy as np


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    for p in range(2, math.isqrt(m) + 1):
        if m % p == 0:
            return False
    return True


@lru_cache(maxsize=None)
def field_prime(N: int) -> int:
    """Smallest prime q > 2N."""
    q = 2 * N + 1
    while not _is_prime(q):
        q += 1
    return q


def value_bits(N: int) -> int:
    """Bits needed to send one fingerprint value."""
    return math.ceil(math.log2(field_prime(N)))


def trial_bits(N: int) -> int:
    """Bits exchanged by one EQTest trial: one value in each direction."""
    return 2 * value_bits(N)


@dataclass(frozen=True)
class Fingerprint:
    q: int
    x: int
    value: int

    @classmethod
    def of(cls, tokens: AbstractSet[int], q: int, x: int) -> "Fingerprint":
        return cls(q=q, x=x, value=sum(pow(x, t, q) for t in tokens) % q)


class EqResult(NamedTuple):
    equal: bool
    bits_used: int


def eq_test(
        set_a: AbstractSet[int],
        set_b: AbstractSet[int],
        c: int,
        rng: np.random.Generator,
        N: int,
) -> EqResult:
    """
    Run up to *c* fingerprint trials; stop at the first disagreement.
    Reports ``equal`` for equal sets with probability 1, and for unequal sets
    with probability <= 2**-c.
    """
    if c < 1:
        raise ValueError(f"EQTest needs c >= 1 trials, got {c}")
    q = field_prime(N)
    bits = 0
    for _ in range(c):
        x = int(rng.integers(1, q))
        bits += trial_bits(N)
        if Fingerprint.of(set_a, q, x).value != Fingerprint.of(set_b, q, x).value:
            return EqResult(False, bits)
    return EqResult(True, bits)
