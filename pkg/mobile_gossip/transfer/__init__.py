from mobile_gossip.transfer.fingerprint import EqResult, Fingerprint, eq_test, field_prime, trial_bits, value_bits
from mobile_gossip.transfer.search import (
    Direction,
    TransferOutcome,
    log2_ceil,
    per_call_bits,
    transfer,
    transfer_bit_budget,
    trials_per_call,
)

__all__ = [
    "Direction",
    "EqResult",
    "Fingerprint",
    "TransferOutcome",
    "eq_test",
    "field_prime",
    "log2_ceil",
    "per_call_bits",
    "transfer",
    "transfer_bit_budget",
    "trial_bits",
    "trials_per_call",
    "value_bits",
]
