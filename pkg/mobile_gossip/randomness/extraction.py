"""Per-token bits and per-node proposal choices read from a shared string."""
from __future__ import annotations

from mobile_gossip.config import PROPOSAL_RETRY_CAP
from mobile_gossip.randomness.expander import hash_u64
from mobile_gossip.randomness.models import SharedString

_U64 = 1 << 64


def token_bit(s: SharedString, r: int, t: int) -> int:
    """First bit of token t's bundle in group r."""
    if not 1 <= t <= s.N:
        raise ValueError(f"Token {t} outside [1, {s.N}]")
    return int(s.group(r)[t - 1, 0])


def proposal_choice(s: SharedString, r: int, uid: int, d: int) -> int:
    """
    Index in [0, d) from the remaining bits of the node's own bundle in group r.

    The raw value is used directly when it falls below the largest multiple
    of d; otherwise it is rehashed to 64 bits and rejection-sampled up to
    PROPOSAL_RETRY_CAP times before falling back to a plain modulo.
    """
    if not 1 <= d <= s.N:
        raise ValueError(f"Candidate count {d} outside [1, {s.N}]")
    if not 1 <= uid <= s.N:
        raise ValueError(f"UID {uid} outside [1, {s.N}]")
    bundle = s.group(r)[uid - 1]
    if d == 1:
        return 0

    v = 0
    for bit in bundle[1:]:
        v = (v << 1) | int(bit)
    span = 1 << (len(bundle) - 1)
    if v < d * (span // d):
        return v % d

    x = 0
    for attempt in range(PROPOSAL_RETRY_CAP):
        x = hash_u64(v, r, uid, attempt)
        if x < d * (_U64 // d):
            return x % d
    return x % d
