"""Seed derivation.

Every random choice in the toolkit descends from one 64-bit master seed.
Child seeds are the first 8 bytes (big-endian) of
``blake2b(f"{parent}:{label}")`` so any implementation can reproduce them.
Instance generation and the randomized solver draw from Python's
``random.Random`` (MT19937) seeded with the derived value.
"""

from __future__ import annotations

import hashlib
import os

RNG_ALGORITHM = "python-random-mt19937"
SEED_RULE = "blake2b64(parent:label)"
SEED_ENV = "PROBESORT_SEED"

MASK64 = (1 << 64) - 1


def derive_seed(parent: int, *labels: object) -> int:
    seed = parent & MASK64
    for label in labels:
        digest = hashlib.blake2b(f"{seed}:{label}".encode(), digest_size=8).digest()
        seed = int.from_bytes(digest, "big")
    return seed


def instance_seed(row_seed: int) -> int:
    return derive_seed(row_seed, "instance")


def solver_seed(row_seed: int) -> int:
    return derive_seed(row_seed, "solver")


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    return int(raw, 0) & MASK64 if raw else 0
