"""Value types for gossip-state analysis."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator


class Solved(enum.Enum):
    SOLVED = "solved"


SOLVED = Solved.SOLVED


@dataclass(frozen=True)
class FrequencyEntry:
    tokens: frozenset[int]
    q: int


@dataclass(frozen=True)
class FrequencyMultiset:
    """Distinct token sets with the number of nodes holding each, largest count first."""
    entries: tuple[FrequencyEntry, ...] = field(default_factory=tuple)

    @property
    def n(self) -> int:
        return sum(e.q for e in self.entries)

    @property
    def q_max(self) -> int:
        return max((e.q for e in self.entries), default=0)

    def count(self, tokens: frozenset[int] | set[int]) -> int:
        key = frozenset(tokens)
        return next((e.q for e in self.entries if e.tokens == key), 0)

    def __iter__(self) -> Iterator[FrequencyEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)
