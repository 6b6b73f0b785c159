"""
Exception hierarchy shared by every sub-package.

Each class also derives from the built-in exception a caller would naturally
catch (ValueError for bad inputs, RuntimeError for failures mid-simulation).
"""

from __future__ import annotations


class GossipError(Exception):
    """Base class for all simulator errors."""


class ConfigError(GossipError, ValueError):
    """Invalid configuration; ``errors`` holds one message per offending field."""

    def __init__(self, errors: list[str] | str) -> None:
        self.errors = [errors] if isinstance(errors, str) else list(errors)
        super().__init__("; ".join(self.errors))


class GraphError(GossipError, ValueError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class GenerationError(GraphError):
    pass


class SizeLimitError(GossipError, ValueError):
    """An exhaustive computation was asked for on an input that is too large."""


class SimulationError(GossipError, RuntimeError):
    pass


class BudgetExceededError(SimulationError):
    pass


class TagLengthError(SimulationError):
    pass


class MalformedProposalError(SimulationError):
    pass


class MatchingViolationError(SimulationError):
    pass


class RoundExhaustedError(SimulationError):
    pass
