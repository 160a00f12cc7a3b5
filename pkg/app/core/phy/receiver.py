from __future__ import annotations

import logging
from typing import NamedTuple, Optional, Sequence

import numpy as np

from app.core.models.amc import McsAssignment, StreamMcs
from app.core.models.precoder import PrecoderSet
from app.core.polar import PolarCode

from .demapper import demodulate_llr
from .equalizer import Equalized, equalize_common, equalize_private
from .interleaver import deinterleave
from .transmitter import transmit_stream

logger = logging.getLogger(__name__)

NOISE_FLOOR = 1e-9


class SicResult(NamedTuple):
    """Decoded messages and CRC flags of one user."""

    common_message: np.ndarray  # full common message Ŵ_c
    common_crc: bool
    private_message: np.ndarray  # Ŵ_{p,μ(k)}
    private_crc: bool
    group_message: np.ndarray  # Ŵ_{μ(k)} = Ŵ_{c,μ(k)} ‖ Ŵ_{p,μ(k)}
    residual: np.ndarray  # input of the private stage


def common_share(message: np.ndarray, mcs: McsAssignment, group: int) -> np.ndarray:
    """Ŵ_{c,m}: the bits of group m inside the concatenated common message."""
    offsets = np.concatenate([[0], np.cumsum(mcs.common_payload_split)])
    return message[offsets[group] : offsets[group + 1]]


def detect_stream(
    equalized: Equalized,
    code: PolarCode,
    mcs: StreamMcs,
    interleaver_seed: int,
    max_log: bool = False,
):
    """LLR demodulation, deinterleaving and CRC-aided decoding of one stream."""
    if equalized.gain == 0:
        llrs = np.zeros(mcs.block_length)
    else:
        # Interference-free noiseless samples still need a finite LLR scale.
        variance = max(equalized.noise_variance, NOISE_FLOOR * abs(equalized.gain) ** 2)
        llrs = demodulate_llr(equalized.symbols, mcs.scheme, variance, equalized.gain, max_log)
    return code.decode(deinterleave(llrs, interleaver_seed))


def sic_receive(
    y: np.ndarray,
    h: np.ndarray,
    precoders: PrecoderSet,
    mcs: McsAssignment,
    codes: Sequence[Optional[PolarCode]],
    group: int,
    noise_variance: float,
    interleaver_seeds: Sequence[int],
    max_log: bool = False,
) -> SicResult:
    """
    Two-stage receiver of a user in `group`.

    codes and interleaver_seeds are indexed [common, private_0, …, private_{M−1}];
    disabled streams have no code. The common stream is decoded, re-encoded,
    re-modulated and subtracted from y, then the own private stream is decoded
    from the residual. A failed common CRC still drives the subtraction.
    """
    y = np.asarray(y, dtype=np.complex128)
    h = np.asarray(h, dtype=np.complex128)
    residual = y
    common_message = np.zeros(0, dtype=np.uint8)
    common_crc = True

    common_code = codes[0]
    if mcs.common.enabled and np.any(precoders.common != 0):
        equalized = equalize_common(y, h, precoders, noise_variance)
        common_message, common_crc = detect_stream(
            equalized, common_code, mcs.common, interleaver_seeds[0], max_log
        )
        rebuilt = transmit_stream(common_message, common_code, mcs.common, interleaver_seeds[0])
        residual = y - (h.conj() @ precoders.common) * rebuilt.symbols
        if not common_crc:
            logger.debug("common CRC failed in group %d; cancelling the failed decode", group)
    elif mcs.common.enabled:
        # A common stream without a precoder carries nothing recoverable.
        common_message = np.zeros(mcs.common.payload_bits, dtype=np.uint8)
        common_crc = False

    private_mcs = mcs.private[group]
    private_message = np.zeros(0, dtype=np.uint8)
    private_crc = True
    if private_mcs.enabled:
        equalized = equalize_private(residual, h, precoders, group, noise_variance)
        private_message, private_crc = detect_stream(
            equalized, codes[1 + group], private_mcs, interleaver_seeds[1 + group], max_log
        )

    group_message = np.concatenate([common_share(common_message, mcs, group), private_message])
    return SicResult(
        common_message=common_message,
        common_crc=bool(common_crc),
        private_message=private_message,
        private_crc=bool(private_crc),
        group_message=group_message,
        residual=residual,
    )
