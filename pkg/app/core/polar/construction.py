"""
Code construction by the Bhattacharyya-parameter recursion.

Parameters are tracked as ln z so long codes at high design SNR do not
underflow. A coded position known to the decoder (shortened) enters with
z = 0. Combining two channels with parameters z_a, z_b gives the worse
channel z_a + z_b − z_a·z_b and the better channel z_a·z_b.
"""

from __future__ import annotations

from typing import Optional, Tuple

import numpy as np

from .transform import PolarCodeError, check_block_length


def design_log_bhattacharyya(snr_db: float, bits_per_symbol: int) -> float:
    """
    ln z of the nearest-neighbour binary decision in square 2^m-QAM at the given SNR.

    z = exp(−3γ / (2(2^m − 1))).
    """
    snr = 10 ** (snr_db / 10)
    return float(-3.0 * snr / (2.0 * (2**bits_per_symbol - 1)))


def design_erasure_probability(snr_db: float, bits_per_symbol: int) -> float:
    return float(np.exp(design_log_bhattacharyya(snr_db, bits_per_symbol)))


def _log_worse(la: np.ndarray, lb: np.ndarray) -> np.ndarray:
    with np.errstate(invalid="ignore"):
        total = np.logaddexp(la, lb)
        value = total + np.log1p(-np.exp(la + lb - total))
    return np.where(np.isneginf(total), -np.inf, value)


def log_bhattacharyya(
    block_length: int, log_z: float, code_block_length: Optional[int] = None
) -> np.ndarray:
    """ln z_j of every synthetic channel u_j, natural order."""
    check_block_length(block_length)
    code_block_length = block_length if code_block_length is None else code_block_length
    z = np.full(block_length, float(log_z))
    z[code_block_length:] = -np.inf
    half = block_length // 2
    while half >= 1:
        blocks = z.reshape(-1, 2, half)
        a, b = blocks[:, 0, :].copy(), blocks[:, 1, :].copy()
        blocks[:, 0, :] = _log_worse(a, b)
        blocks[:, 1, :] = a + b
        half //= 2
    return z


def construct_info_set(
    block_length: int,
    num_info: int,
    log_z: float = float(np.log(0.5)),
    code_block_length: Optional[int] = None,
) -> Tuple[int, ...]:
    """
    The num_info most reliable u positions, sorted.

    Positions pinned by shortening (≥ code_block_length) are never chosen; ties go
    to the lower index.
    """
    check_block_length(block_length)
    usable = block_length if code_block_length is None else code_block_length
    if not 0 <= num_info <= usable:
        raise PolarCodeError(
            f"cannot place {num_info} information bits in {usable} usable positions"
        )
    reliability = log_bhattacharyya(block_length, log_z, code_block_length)
    reliability[usable:] = np.inf
    order = np.argsort(reliability, kind="stable")
    return tuple(sorted(int(i) for i in order[:num_info]))
