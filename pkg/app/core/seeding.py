"""
Seed derivation.

Every random draw in a campaign comes from a Generator seeded with
derive_seed(master, *keys); keys are small nonnegative integers such as the
operating-point index, realization index and a purpose tag, so parallel
workers reproduce the sequential run exactly.
"""

from __future__ import annotations

from enum import IntEnum

import numpy as np


class SeedPurpose(IntEnum):
    ESTIMATE = 0
    CSIT_ERROR = 1
    OPTIMIZER = 2
    EVALUATION = 3
    MESSAGE = 4
    INTERLEAVER = 5
    NOISE = 6
    REALIZATION = 8


def derive_seed(master: int, *keys: int) -> int:
    sequence = np.random.SeedSequence(entropy=int(master), spawn_key=tuple(int(k) for k in keys))
    return int(sequence.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))


def rng_for(master: int, *keys: int) -> np.random.Generator:
    return np.random.default_rng(derive_seed(master, *keys))
