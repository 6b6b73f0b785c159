"""
All constants, defaults and tunables.
Edit here to change simulator behaviour globally.
"""

# Graph
EXACT_EXPANSION_MAX_N: int = 20  # exhaustive subset enumeration above this is too slow
DEFAULT_EXPANSION_TRIALS: int = 5000
GENERATION_RETRY_CAP: int = 1000
DEFAULT_FRESH_HORIZON: int = 64  # snapshots materialized up front by graph gen

# Engine
DEFAULT_TOKEN_CAP: int = 1
DEFAULT_MAX_ROUNDS: int = 100_000
TRANSFER_ERROR_EXPONENT: int = 2  # c_t, transfer epsilon = n ** -c_t

# Transfer
MEMBERSHIP_SLACK_BITS: int = 4  # exact membership bits exchanged at the end of the search

# Shared randomness
SHARED_GROUP_CONSTANT: int = 32  # groups = 32 * N**2
SEED_LENGTH_CONSTANT: int = 4  # seed bits = 4 * ceil(log2 N)**2
PROPOSAL_RETRY_CAP: int = 64
EXPANDER_BLOCK_BITS: int = 512

# CrowdedBin
CROWDEDBIN_CONFIDENCE: int = 1
CROWDEDBIN_BETA: int = 4
CROWDEDBIN_GAMMA: int = 12

# Metrics
EPS_CLIQUE_MAX_N: int = 64

# Harness
CSV_SCHEMA_VERSION: int = 1
CSV_COLUMNS: list[str] = [
    "trial",
    "completion_round",
    "eps_completion_round",
    "dnf",
    "connections",
    "bits_total",
    "trace_hash",
]
PHI_TRAJECTORY_POINTS: int = 64  # downsampled length stored per trial
OUTPUT_DIR_ENV: str = "MOBILE_GOSSIP_OUTPUT_DIR"
DEFAULT_TRIALS: int = 20
DEFAULT_SEED: int = 0

ALGORITHMS: list[str] = ["blindmatch", "sharedbit", "simsharedbit", "ppush", "crowdedbin"]
MIN_TAG_BITS: dict[str, int] = {
    "blindmatch": 0,
    "sharedbit": 1,
    "simsharedbit": 1,
    "ppush": 1,
    "crowdedbin": 1,
}
EXHAUSTION_POLICIES: list[str] = ["wrap", "blindmatch", "halt"]
STOP_RULES: list[str] = ["gossip", "eps", "reach"]
