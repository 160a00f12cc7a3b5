from .demapper import demodulate_llr
from .equalizer import Equalized, equalize_common, equalize_private, mmse_weights, mse
from .interleaver import deinterleave, interleave
from .qam import ModulationError, constellation, hard_decision, label_bits, modulate
from .receiver import SicResult, common_share, detect_stream, sic_receive
from .transmitter import design_snr_db, stream_code, transmit_stream

__all__ = [
    "Equalized",
    "ModulationError",
    "SicResult",
    "common_share",
    "constellation",
    "deinterleave",
    "demodulate_llr",
    "design_snr_db",
    "detect_stream",
    "equalize_common",
    "equalize_private",
    "hard_decision",
    "interleave",
    "label_bits",
    "mmse_weights",
    "modulate",
    "mse",
    "sic_receive",
    "stream_code",
    "transmit_stream",
]
