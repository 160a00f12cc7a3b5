"""Soft demapping of the effective scalar channel ŷ = μ·s + η, η ~ CN(0, σ²)."""

from __future__ import annotations

import numpy as np
from scipy.special import logsumexp

from app.core.models.phy import ModulationScheme

from .qam import constellation, label_bits


def demodulate_llr(
    symbols: np.ndarray,
    scheme: ModulationScheme,
    noise_variance: float,
    gain: complex = 1.0,
    max_log: bool = False,
) -> np.ndarray:
    """
    Per-bit LLRs ln P(b=0|ŷ)/P(b=1|ŷ), positive when 0 is more likely.

    Exact log-sum-exp over the alphabet by default; max_log keeps only the
    nearest point of each subset. Returned as S·m values, symbol by symbol.
    """
    if noise_variance <= 0:
        raise ValueError(f"noise variance must be positive, got {noise_variance}")
    symbols = np.asarray(symbols, dtype=np.complex128)
    m = scheme.bits_per_symbol
    points = gain * constellation(m)
    metric = -np.abs(symbols[:, None] - points[None, :]) ** 2 / noise_variance
    table = label_bits(m)

    llrs = np.empty((symbols.size, m))
    for bit in range(m):
        zero = table[:, bit] == 0
        if max_log:
            llrs[:, bit] = metric[:, zero].max(axis=1) - metric[:, ~zero].max(axis=1)
        else:
            llrs[:, bit] = logsumexp(metric[:, zero], axis=1) - logsumexp(metric[:, ~zero], axis=1)
    return llrs.reshape(-1)
