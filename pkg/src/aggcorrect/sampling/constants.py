DEFAULT_RESOLUTION: int = 10_000
DEFAULT_MAX_ATTEMPTS_FACTOR: int = 10_000
DEFAULT_SEED: int = 42
DEFAULT_WORKERS: int = 1

#   Attempts per RNG stream; results only depend on (seed, chunk index), never on the worker count
CHUNK_SIZE: int = 8192
LOW_ACCEPTANCE_RATE_WARNING: float = 0.01
