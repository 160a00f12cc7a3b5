"""
Cyclic redundancy check as a GF(2) matrix product.

The generator is given without its leading x^c term (0x1021 for
x^16 + x^12 + x^5 + 1). No reflection, zero initial register, no final XOR,
so the CRC of an all-zero (or empty) message is all zeros.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .transform import PolarCodeError


@lru_cache(maxsize=64)
def crc_matrix(message_length: int, length: int, polynomial: int) -> np.ndarray:
    """Row i is the remainder of x^(message_length − 1 − i + length) modulo the generator."""
    if length < 1 or polynomial >= 1 << length:
        raise PolarCodeError(f"polynomial {polynomial:#x} does not fit a {length}-bit CRC")
    mask = (1 << length) - 1
    top = 1 << (length - 1)
    remainders = np.zeros((message_length, length), dtype=np.int64)
    register = polynomial
    for degree in range(message_length):
        row = message_length - 1 - degree
        remainders[row] = [(register >> (length - 1 - b)) & 1 for b in range(length)]
        register = ((register << 1) ^ polynomial) & mask if register & top else (register << 1) & mask
    remainders.flags.writeable = False
    return remainders


def crc_remainder(bits: np.ndarray, length: int, polynomial: int) -> np.ndarray:
    """CRC bits of the message(s) along the last axis."""
    bits = np.asarray(bits, dtype=np.int64)
    matrix = crc_matrix(bits.shape[-1], length, polynomial)
    return ((bits @ matrix) & 1).astype(np.uint8)


def crc_attach(bits: np.ndarray, length: int, polynomial: int) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.uint8)
    if length == 0:
        return bits.copy()
    return np.concatenate([bits, crc_remainder(bits, length, polynomial)], axis=-1)


def crc_check(bits: np.ndarray, length: int, polynomial: int) -> np.ndarray:
    """True where message‖crc has a zero remainder; always true without a CRC."""
    bits = np.asarray(bits, dtype=np.uint8)
    if length == 0:
        return np.ones(bits.shape[:-1], dtype=bool) if bits.ndim > 1 else np.bool_(True)
    message, received = bits[..., :-length], bits[..., -length:]
    return np.all(crc_remainder(message, length, polynomial) == received, axis=-1)
