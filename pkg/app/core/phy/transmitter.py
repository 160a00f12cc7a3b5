from __future__ import annotations

import numpy as np

from app.core.models.amc import StreamMcs
from app.core.models.coding import PolarSettings
from app.core.models.phy import StreamFrame
from app.core.polar import PolarCode, build_polar_code

from .interleaver import interleave
from .qam import modulate


def design_snr_db(average_rate: float) -> float:
    """SNR (dB) at which a Gaussian channel supports the stream's average rate."""
    return round(float(10 * np.log10(max(2.0**average_rate - 1.0, 1e-6))), 2)


def stream_code(mcs: StreamMcs, settings: PolarSettings) -> PolarCode:
    """Polar code of an enabled stream, designed at the SNR its AR implies."""
    return build_polar_code(
        mcs.block_length,
        mcs.payload_bits,
        settings,
        design_snr_db(mcs.average_rate),
        mcs.scheme.bits_per_symbol,
    )


def transmit_stream(
    message: np.ndarray, code: PolarCode, mcs: StreamMcs, interleaver_seed: int
) -> StreamFrame:
    """Encode, interleave and modulate one stream's message."""
    codeword = code.encode(message).bits
    interleaved = interleave(codeword, interleaver_seed)
    return StreamFrame(
        codeword=codeword,
        interleaved=interleaved,
        symbols=modulate(interleaved, mcs.scheme),
        scheme=mcs.scheme,
    )
