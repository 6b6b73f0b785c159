"""Goodness of a CrowdedBin configuration (tags and per-instance bin choices)."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from mobile_gossip.algorithms.schedule import log2_exact, tag_bits


@dataclass(frozen=True)
class GoodnessReport:
    good: bool
    target_instance: int | None
    unique_tags: bool
    crowded_instances: list[int] = field(default_factory=list)


def tag_space(beta: int, N: int) -> int:
    """Tags are drawn from 1..tag_space, the non-zero values of ell bits."""
    return (1 << tag_bits(beta, N)) - 1


def is_good_configuration(
        tags: Sequence[int],
        bin_choices: Sequence[Sequence[int]],
        k: int,
        N: int,
        beta: int,
        gamma: int,
) -> GoodnessReport:
    """
    ``bin_choices[t][j-1]`` is the bin token t picked in instance j.

    An instance is crowded when one of its bins receives at least
    gamma*log2 N tokens. The target is the smallest non-crowded instance; the
    configuration is good iff tags are unique, a target exists and
    2**target <= 2k.
    """
    L = log2_exact(N)
    if len(tags) != len(bin_choices):
        raise ValueError("Need one bin-choice row per tag")
    if any(len(row) != L for row in bin_choices):
        raise ValueError(f"Each bin-choice row needs {L} entries, one per instance")

    threshold = gamma * L
    crowded = []
    for j in range(1, L + 1):
        loads = Counter(row[j - 1] for row in bin_choices)
        if loads and max(loads.values()) >= threshold:
            crowded.append(j)

    unique = len(set(tags)) == len(tags)
    target = next((j for j in range(1, L + 1) if j not in crowded), None)
    good = unique and target is not None and (1 << target) <= 2 * k
    return GoodnessReport(good, target, unique, crowded)


def random_configuration(
        k: int,
        N: int,
        beta: int,
        rng: np.random.Generator,
) -> tuple[list[int], list[list[int]]]:
    """k uniform tags and, per instance j, uniform bin choices in 1..2**j."""
    L = log2_exact(N)
    tags = [int(t) for t in rng.integers(1, tag_space(beta, N) + 1, size=k)]
    bins = [[int(rng.integers(1, (1 << j) + 1)) for j in range(1, L + 1)] for _ in range(k)]
    return tags, bins
