from __future__ import annotations

import numpy as np

from app.core.models.channel import ChannelRealization

from .noise import complex_gaussian


def csit_error_variance(alpha: float, power: float) -> float:
    """σ_e² = P^-α."""
    if power <= 0:
        raise ValueError(f"P must be positive, got {power}")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"α must lie in [0, 1], got {alpha}")
    return float(power ** (-alpha))


def apply_csit_error(
    true_channel: np.ndarray, alpha: float, power: float, seed: int
) -> ChannelRealization:
    """
    Split a true channel into estimate and error with H̃ ~ CN(0, P^-α) i.i.d.

    Ĥ = H − H̃; the returned true channel is re-formed as Ĥ + H̃ so the
    decomposition holds bit-exactly (it differs from the input by at most one ulp).
    """
    true_channel = np.asarray(true_channel, dtype=np.complex128)
    rng = np.random.default_rng(seed)
    error = complex_gaussian(rng, true_channel.shape, csit_error_variance(alpha, power))
    return ChannelRealization.from_parts(true_channel - error, error)
