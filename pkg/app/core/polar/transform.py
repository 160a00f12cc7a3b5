"""
Polar transform and shortening.

The mother codeword is ν = u·B_N·F^{⊗n}. Since B_N commutes with F^{⊗n},
ν_i = y_{π(i)} with y = u·F^{⊗n} computed in natural order and π the bit
reversal. Shortening freezes u_j for j ≥ N_target, which forces y_j = 0 for
j ≥ N_target; those are the coded bits ν_i with π(i) ≥ N_target, and they
are not transmitted.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

# LLR given to shortened (known-zero) positions; finite so f/g arithmetic stays defined.
KNOWN_LLR = 1e12


class PolarCodeError(Exception):
    """Raised on invalid polar code lengths or parameters."""

    pass


def check_block_length(block_length: int) -> int:
    if block_length < 1 or block_length & (block_length - 1):
        raise PolarCodeError(f"block length {block_length} is not a power of two")
    return block_length.bit_length() - 1


@lru_cache(maxsize=None)
def bit_reversal_permutation(block_length: int) -> np.ndarray:
    stages = check_block_length(block_length)
    indices = np.arange(block_length)
    reversed_indices = np.zeros_like(indices)
    for bit in range(stages):
        reversed_indices |= ((indices >> bit) & 1) << (stages - 1 - bit)
    reversed_indices.flags.writeable = False
    return reversed_indices


def polar_transform(bits: np.ndarray) -> np.ndarray:
    """x·F^{⊗n} over GF(2) along the last axis, natural order. F^{⊗n} is its own inverse."""
    x = np.array(bits, dtype=np.uint8)
    length = x.shape[-1]
    check_block_length(length)
    lead = x.shape[:-1]
    half = length // 2
    while half >= 1:
        view = x.reshape(*lead, -1, 2, half)
        view[..., 0, :] ^= view[..., 1, :]
        half //= 2
    return x


def encode_mother(u: np.ndarray) -> np.ndarray:
    """ν = u·B_N·F^{⊗n}."""
    y = polar_transform(u)
    return y[..., bit_reversal_permutation(y.shape[-1])]


@lru_cache(maxsize=None)
def shortening_pattern(block_length: int, code_block_length: int) -> np.ndarray:
    """Indices of the transmitted mother-code positions, ascending."""
    check_block_length(block_length)
    if not block_length // 2 < code_block_length <= block_length:
        raise PolarCodeError(
            f"N_target = {code_block_length} outside ({block_length // 2}, {block_length}]; "
            f"choose a smaller mother code"
        )
    kept = np.flatnonzero(bit_reversal_permutation(block_length) < code_block_length)
    kept.flags.writeable = False
    return kept


def rate_match(mother_codeword: np.ndarray, code_block_length: int) -> np.ndarray:
    """Drop the shortened positions of a mother codeword."""
    mother_codeword = np.asarray(mother_codeword)
    return mother_codeword[..., shortening_pattern(mother_codeword.shape[-1], code_block_length)]


def rate_recover(llrs: np.ndarray, block_length: int) -> np.ndarray:
    """Inverse of rate_match for LLRs: shortened positions get the known-zero LLR."""
    llrs = np.asarray(llrs, dtype=np.float64)
    kept = shortening_pattern(block_length, llrs.shape[-1])
    full = np.full((*llrs.shape[:-1], block_length), KNOWN_LLR)
    full[..., kept] = llrs
    return full
