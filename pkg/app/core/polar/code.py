from __future__ import annotations

import logging
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from app.core.models.coding import Codeword, PolarCodeConfig, PolarSettings

from .construction import construct_info_set, design_log_bhattacharyya
from .crc import crc_attach, crc_check
from .decoder import scl_decode
from .transform import (
    PolarCodeError,
    bit_reversal_permutation,
    encode_mother,
    rate_match,
    rate_recover,
)

logger = logging.getLogger(__name__)


class DecodeResult(NamedTuple):
    message: np.ndarray
    crc_pass: bool


def mother_length(code_block_length: int) -> int:
    """Smallest power of two ≥ N_target."""
    if code_block_length < 1:
        raise PolarCodeError(f"invalid code block length {code_block_length}")
    return 1 << (code_block_length - 1).bit_length()


class PolarCode:
    """
    CRC-aided, shortened polar code.

    encode: w → w‖crc placed on 𝒜, frozen bits zero, ν = u·B_N·F^{⊗n}, shortened
    to N_target. decode: CRC-aided SCL, returning the best CRC-passing path or,
    failing that, the best path with crc_pass = False.
    """

    def __init__(self, config: PolarCodeConfig):
        self.config = config
        n = config.mother_block_length
        self.info_positions = np.asarray(config.info_set, dtype=np.int64)
        self.frozen_mask = np.zeros(n, dtype=bool)
        self.frozen_mask[list(config.frozen_set)] = True
        self._natural_order = bit_reversal_permutation(n)

    @property
    def num_info_bits(self) -> int:
        return self.config.num_info_bits

    @property
    def code_block_length(self) -> int:
        return self.config.code_block_length

    def encode(self, message: np.ndarray) -> Codeword:
        message = np.asarray(message, dtype=np.uint8)
        if message.shape != (self.config.num_info_bits,):
            raise PolarCodeError(
                f"message of {message.size} bits for K_info = {self.config.num_info_bits}"
            )
        u = np.zeros(self.config.mother_block_length, dtype=np.uint8)
        u[self.info_positions] = crc_attach(message, self.config.crc_length, self.config.crc_polynomial)
        return Codeword(bits=rate_match(encode_mother(u), self.config.code_block_length))

    def decode(self, llrs: np.ndarray) -> DecodeResult:
        llrs = np.asarray(llrs, dtype=np.float64)
        if llrs.shape != (self.config.code_block_length,):
            raise PolarCodeError(
                f"{llrs.size} LLRs for a code block of {self.config.code_block_length}"
            )
        mother = rate_recover(llrs, self.config.mother_block_length)
        # ν_{π(j)} = y_j, so the natural-order LLRs are a bit-reversed gather.
        natural = mother[self._natural_order]
        paths = scl_decode(natural, self.frozen_mask, self.config.list_size)
        carried = paths.u[:, self.info_positions]
        k = self.config.num_info_bits
        passing = np.atleast_1d(
            crc_check(carried, self.config.crc_length, self.config.crc_polynomial)
        )
        hit = np.flatnonzero(passing)
        if hit.size:
            return DecodeResult(carried[hit[0], :k].copy(), True)
        return DecodeResult(carried[0, :k].copy(), False)

    def __str__(self) -> str:
        return f"<PolarCode {self.config}>"


def make_code_config(
    code_block_length: int,
    num_info_bits: int,
    settings: PolarSettings,
    log_z: float,
) -> PolarCodeConfig:
    n = mother_length(code_block_length)
    k = num_info_bits + settings.crc_length
    return PolarCodeConfig(
        mother_block_length=n,
        code_block_length=code_block_length,
        num_info_bits=num_info_bits,
        crc_length=settings.crc_length,
        crc_polynomial=settings.crc_polynomial,
        list_size=settings.list_size,
        info_set=construct_info_set(n, k, log_z, code_block_length),
    )


@lru_cache(maxsize=256)
def build_polar_code(
    code_block_length: int,
    num_info_bits: int,
    settings: PolarSettings,
    design_snr_db: float,
    bits_per_symbol: int,
) -> PolarCode:
    """Cached code for one stream; the design SNR is rounded to 0.01 dB by callers."""
    log_z = design_log_bhattacharyya(design_snr_db + settings.design_snr_offset_db, bits_per_symbol)
    config = make_code_config(code_block_length, num_info_bits, settings, log_z)
    logger.debug("built %s (design %.2f dB)", config, design_snr_db)
    return PolarCode(config)
