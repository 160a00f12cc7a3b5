from __future__ import annotations

import numpy as np


def permutation(length: int, seed: int) -> np.ndarray:
    return np.random.default_rng(seed).permutation(length)


def interleave(values: np.ndarray, seed: int) -> np.ndarray:
    """Pseudo-random permutation of a frame, fixed by the seed."""
    values = np.asarray(values)
    return values[permutation(values.shape[-1], seed)]


def deinterleave(values: np.ndarray, seed: int) -> np.ndarray:
    """Inverse of interleave; works on bits and on LLRs."""
    values = np.asarray(values)
    restored = np.empty_like(values)
    restored[permutation(values.shape[-1], seed)] = values
    return restored
