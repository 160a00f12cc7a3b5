from __future__ import annotations

from typing import Tuple, Union

import numpy as np


def complex_gaussian(
    rng: np.random.Generator, shape: Union[int, Tuple[int, ...]], variance: float
) -> np.ndarray:
    """i.i.d. CN(0, variance) samples."""
    scale = np.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def awgn(signal: np.ndarray, noise_variance: float, seed: int) -> np.ndarray:
    """Add i.i.d. CN(0, σ_n²) noise; σ_n² = 0 returns the signal unchanged."""
    signal = np.asarray(signal, dtype=np.complex128)
    if noise_variance < 0:
        raise ValueError(f"noise variance must be nonnegative, got {noise_variance}")
    if noise_variance == 0:
        return signal.copy()
    rng = np.random.default_rng(seed)
    return signal + complex_gaussian(rng, signal.shape, noise_variance)
