"""
Square QAM with per-axis reflected Gray labelling.

The first m/2 bits of a symbol (MSB first) select the in-phase level and
the remaining m/2 the quadrature level. On each axis, level i (counted from
the largest amplitude down) has amplitude 2^(m/2) − 1 − 2i and label
i XOR (i >> 1). Points are divided by √(2(M − 1)/3), i.e. √2, √10, √42 and
√170, so E|s|² = 1. For 4-QAM, bits 00 map to (1 + j)/√2.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from app.core.models.phy import ModulationScheme


class ModulationError(Exception):
    """Raised when a bit frame does not fit the alphabet."""

    pass


@lru_cache(maxsize=None)
def axis_levels(bits_per_axis: int) -> np.ndarray:
    """Amplitude of each per-axis label."""
    count = 1 << bits_per_axis
    levels = np.empty(count)
    for i in range(count):
        levels[i ^ (i >> 1)] = count - 1 - 2 * i
    levels.flags.writeable = False
    return levels


@lru_cache(maxsize=None)
def constellation(bits_per_symbol: int) -> np.ndarray:
    """Points indexed by the integer label of their bits (MSB first)."""
    if bits_per_symbol < 2 or bits_per_symbol % 2:
        raise ModulationError(f"{bits_per_symbol} bits per symbol is not square QAM")
    half = bits_per_symbol // 2
    levels = axis_levels(half)
    labels = np.arange(1 << bits_per_symbol)
    order = 1 << bits_per_symbol
    points = (levels[labels >> half] + 1j * levels[labels & ((1 << half) - 1)]) / np.sqrt(
        2 * (order - 1) / 3
    )
    points.flags.writeable = False
    return points


@lru_cache(maxsize=None)
def label_bits(bits_per_symbol: int) -> np.ndarray:
    """(M, m) table of the bits of every label."""
    labels = np.arange(1 << bits_per_symbol)
    shifts = np.arange(bits_per_symbol - 1, -1, -1)
    table = ((labels[:, None] >> shifts) & 1).astype(np.uint8)
    table.flags.writeable = False
    return table


def modulate(bits: np.ndarray, scheme: ModulationScheme) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.int64)
    m = scheme.bits_per_symbol
    if bits.ndim != 1 or bits.size % m:
        raise ModulationError(f"{bits.size} bits do not split into {m}-bit symbols")
    weights = 1 << np.arange(m - 1, -1, -1)
    return constellation(m)[bits.reshape(-1, m) @ weights]


def hard_decision(symbols: np.ndarray, scheme: ModulationScheme) -> np.ndarray:
    """Bits of the nearest constellation point of each symbol."""
    points = constellation(scheme.bits_per_symbol)
    nearest = np.argmin(np.abs(np.asarray(symbols)[:, None] - points[None, :]), axis=1)
    return label_bits(scheme.bits_per_symbol)[nearest].reshape(-1)
