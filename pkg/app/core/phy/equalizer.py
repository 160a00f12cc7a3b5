"""
MMSE equalizers of the common and private streams.

For user k with T_{c,k} = Σ_{j∈{c,1..M}} |h_kᴴp_j|² + σ_n² and
T_k = T_{c,k} − |h_kᴴp_c|²:

    g_{c,k} = p_cᴴh_k / T_{c,k}        g_k = p_μ(k)ᴴh_k / T_k

After equalization the sample is modelled as ŷ = (g·hᴴp)·s + η with Gaussian
η of variance |g|²·(T − |hᴴp|²).
"""

from __future__ import annotations

from typing import NamedTuple, Tuple

import numpy as np

from app.core.models.precoder import PrecoderSet


class Equalized(NamedTuple):
    symbols: np.ndarray
    weight: complex
    gain: complex
    noise_variance: float


def _amplitudes(h: np.ndarray, precoders: PrecoderSet) -> np.ndarray:
    """hᴴp_j for j = c, 1..M."""
    return np.asarray(h, dtype=np.complex128).conj() @ precoders.matrix


def mmse_weights(
    h: np.ndarray, precoders: PrecoderSet, group: int, noise_variance: float
) -> Tuple[complex, complex]:
    """(g_c, g_k) for a user of the given group."""
    amplitudes = _amplitudes(h, precoders)
    total_common = np.sum(np.abs(amplitudes) ** 2) + noise_variance
    total_private = total_common - np.abs(amplitudes[0]) ** 2
    return (
        complex(np.conj(amplitudes[0]) / total_common),
        complex(np.conj(amplitudes[1 + group]) / total_private),
    )


def _equalize(
    y: np.ndarray, amplitudes: np.ndarray, stream: int, streams: slice, noise_variance: float
) -> Equalized:
    total = np.sum(np.abs(amplitudes[streams]) ** 2) + noise_variance
    desired = amplitudes[stream]
    weight = complex(np.conj(desired) / total)
    noise = float(abs(weight) ** 2 * (total - abs(desired) ** 2))
    return Equalized(
        symbols=weight * np.asarray(y, dtype=np.complex128),
        weight=weight,
        gain=complex(weight * desired),
        noise_variance=noise,
    )


def equalize_common(
    y: np.ndarray, h: np.ndarray, precoders: PrecoderSet, noise_variance: float
) -> Equalized:
    """Apply g_{c,k} to every received sample."""
    return _equalize(y, _amplitudes(h, precoders), 0, slice(None), noise_variance)


def equalize_private(
    y: np.ndarray, h: np.ndarray, precoders: PrecoderSet, group: int, noise_variance: float
) -> Equalized:
    """Apply g_k to samples from which the common stream has been subtracted."""
    return _equalize(y, _amplitudes(h, precoders), 1 + group, slice(1, None), noise_variance)


def mse(
    weight: complex,
    h: np.ndarray,
    precoders: PrecoderSet,
    stream: int,
    noise_variance: float,
    include_common: bool = True,
) -> float:
    """E|g·y − s_stream|² for unit-power independent symbols; stream 0 is the common one."""
    amplitudes = _amplitudes(h, precoders)
    if not include_common:
        amplitudes = amplitudes.copy()
        amplitudes[0] = 0
    total = np.sum(np.abs(amplitudes) ** 2) + noise_variance
    return float(
        abs(weight) ** 2 * total - 2 * np.real(weight * amplitudes[stream]) + 1
    )
