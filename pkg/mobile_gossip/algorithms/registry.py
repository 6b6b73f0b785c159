from __future__ import annotations

from typing import Any, Callable

from mobile_gossip.algorithms.blindmatch import BlindMatch
from mobile_gossip.algorithms.crowdedbin import CrowdedBin
from mobile_gossip.algorithms.ppush import PPush
from mobile_gossip.algorithms.sharedbit import SharedBit
from mobile_gossip.algorithms.simsharedbit import SimSharedBit
from mobile_gossip.config import ALGORITHMS, CROWDEDBIN_BETA, CROWDEDBIN_CONFIDENCE, CROWDEDBIN_GAMMA
from mobile_gossip.engine import NodeBehavior
from mobile_gossip.errors import ConfigError
from mobile_gossip.randomness import Seed


def _blindmatch(options: dict[str, Any]) -> NodeBehavior:
    return BlindMatch()


def _sharedbit(options: dict[str, Any]) -> NodeBehavior:
    seed = options.get("shared_seed")
    if isinstance(seed, str):
        try:
            seed = Seed.from_hex(seed)
        except ValueError as exc:
            raise ConfigError(f"shared_seed: not a hex seed ({exc})") from exc
    return SharedBit(exhaustion=options.get("exhaustion") or "wrap", shared_seed=seed)


def _simsharedbit(options: dict[str, Any]) -> NodeBehavior:
    return SimSharedBit()


def _ppush(options: dict[str, Any]) -> NodeBehavior:
    return PPush(rumor=options.get("rumor"), informed_uids=options.get("informed_uids", ()))


def _crowdedbin(options: dict[str, Any]) -> NodeBehavior:
    return CrowdedBin(
        beta=options.get("beta") or CROWDEDBIN_BETA,
        gamma=options.get("gamma") or CROWDEDBIN_GAMMA,
        confidence=options.get("confidence") or CROWDEDBIN_CONFIDENCE,
    )


_BEHAVIORS: dict[str, Callable[[dict[str, Any]], NodeBehavior]] = {
    "blindmatch": _blindmatch,
    "sharedbit": _sharedbit,
    "simsharedbit": _simsharedbit,
    "ppush": _ppush,
    "crowdedbin": _crowdedbin,
}


def behavior_for(algorithm: str, **options: Any) -> NodeBehavior:
    """A fresh behavior instance for one trial."""
    factory = _BEHAVIORS.get(algorithm)
    if factory is None:
        raise ConfigError(f"algorithm: unknown '{algorithm}'. Choose from: {ALGORITHMS}")
    return factory(options)
