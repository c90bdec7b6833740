"""Process-wide defaults, overridable through environment variables."""

from __future__ import annotations

import os


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    return int(raw)


# Tuple spaces up to this size are campaigned exhaustively, larger ones are sampled.
EXHAUSTIVE_LIMIT = _env_int("RADINV_EXHAUSTIVE_LIMIT", 10**6)

DEFAULT_SEED = _env_int("RADINV_SEED", 42)

# Largest ring (element count) or candidate set we are willing to enumerate.
RING_BUDGET = _env_int("RADINV_RING_BUDGET", 10**6)

DEFAULT_TRIALS = 10_000
