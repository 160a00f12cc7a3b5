"""
Average-rate driven modulation and coding selection.

Each stream's AR (after back-off) picks the smallest alphabet able to carry
it at code rate β, capped at m′ bits per symbol; the code block fills the S
channel uses of the frame and the code rate is rounded up to whole bits.
"""

from __future__ import annotations

import logging
import math
from typing import List, NamedTuple, Optional

import numpy as np

from app.core.models.amc import AmcConfig, McsAssignment, StreamMcs
from app.core.models.enums import StreamClass
from app.core.models.phy import ModulationScheme
from app.core.models.precoder import AverageRateReport

logger = logging.getLogger(__name__)

# Guards the ceiling against R·N landing a hair above an integer.
_CEIL_SLACK = 1e-9


class CodeParams(NamedTuple):
    block_length: int  # N_l
    info_bits: int  # K_l = r_l·N_l, CRC included

    @property
    def rate(self) -> float:
        return self.info_bits / self.block_length


def apply_backoff(rate: float, backoff_db: float) -> float:
    """De-rate an AR by a back-off given in dB."""
    return float(rate * 10 ** (-backoff_db / 10))


def select_modulation(rate: float, amc: AmcConfig) -> ModulationScheme:
    """Smallest alphabet with m ≥ min(R̄/β, m′); R̄ ≤ 0 maps to the lowest alphabet."""
    if rate <= 0:
        return ModulationScheme(bits_per_symbol=amc.alphabet_set[0])
    needed = min(rate / amc.max_code_rate, amc.max_order_log)
    for bits in amc.alphabet_set:
        if bits >= needed - _CEIL_SLACK:
            return ModulationScheme(bits_per_symbol=bits)
    return ModulationScheme(bits_per_symbol=amc.alphabet_set[-1])


def code_params(
    rate: float, scheme: ModulationScheme, stream_length: int, max_code_rate: float
) -> CodeParams:
    """N_l = S·m and r_l = ⌈N_l·min(R̄/m, β)⌉ / N_l."""
    bits = scheme.bits_per_symbol
    block_length = stream_length * bits
    if rate <= 0:
        return CodeParams(block_length, 0)
    fraction = min(rate / bits, max_code_rate)
    info_bits = int(math.ceil(block_length * fraction - _CEIL_SLACK))
    return CodeParams(block_length, min(info_bits, block_length))


def stream_mcs(
    rate: float,
    amc: AmcConfig,
    stream: StreamClass,
    crc_length: int,
    group: Optional[int] = None,
) -> StreamMcs:
    """MCS of one stream from its (already backed-off) AR."""
    scheme = select_modulation(rate, amc)
    params = code_params(rate, scheme, amc.stream_length, amc.max_code_rate)
    payload = max(params.info_bits - crc_length, 0)
    return StreamMcs(
        stream=stream,
        group=group,
        scheme=scheme,
        block_length=params.block_length,
        coded_info_bits=params.info_bits,
        payload_bits=payload,
        average_rate=max(float(rate), 0.0),
    )


def split_common_payload(payload: int, shares: np.ndarray) -> List[int]:
    """
    Apportion the common payload over groups proportionally to their common-rate shares.

    Shares are floored; the leftover bits go to group 0. Zero shares split evenly.
    """
    shares = np.asarray(shares, dtype=np.float64)
    num_groups = shares.size
    if payload <= 0:
        return [0] * num_groups
    total = float(shares.sum())
    weights = shares / total if total > 0 else np.full(num_groups, 1.0 / num_groups)
    split = np.floor(payload * weights).astype(int)
    leftover = payload - int(split.sum())
    split[0 if leftover >= 0 else int(np.argmax(split))] += leftover
    return [int(x) for x in split]


def assign_mcs(report: AverageRateReport, amc: AmcConfig, crc_length: int = 16) -> McsAssignment:
    """Back off every AR, then select modulation and code for the common and private streams."""
    common_rate = apply_backoff(report.common_rate, amc.backoff_common_db)
    common = stream_mcs(common_rate, amc, StreamClass.COMMON, crc_length)
    private = [
        stream_mcs(apply_backoff(float(r), amc.backoff_private_db), amc, StreamClass.PRIVATE, crc_length, m)
        for m, r in enumerate(report.private_rates)
    ]
    split = split_common_payload(common.payload_bits, report.common_rate_split)
    assignment = McsAssignment(
        common=common,
        private=private,
        common_payload_split=split,
        stream_length=amc.stream_length,
    )
    logger.debug("MCS %s, common split %s", assignment.summary, split)
    return assignment
