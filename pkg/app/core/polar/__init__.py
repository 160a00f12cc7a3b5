from .code import DecodeResult, PolarCode, build_polar_code, make_code_config, mother_length
from .construction import (
    construct_info_set,
    design_erasure_probability,
    design_log_bhattacharyya,
    log_bhattacharyya,
)
from .crc import crc_attach, crc_check, crc_remainder
from .decoder import sc_decode, scl_decode
from .transform import (
    KNOWN_LLR,
    PolarCodeError,
    bit_reversal_permutation,
    encode_mother,
    polar_transform,
    rate_match,
    rate_recover,
    shortening_pattern,
)

__all__ = [
    "KNOWN_LLR",
    "DecodeResult",
    "PolarCode",
    "PolarCodeError",
    "bit_reversal_permutation",
    "build_polar_code",
    "construct_info_set",
    "crc_attach",
    "crc_check",
    "crc_remainder",
    "design_erasure_probability",
    "design_log_bhattacharyya",
    "encode_mother",
    "log_bhattacharyya",
    "make_code_config",
    "mother_length",
    "polar_transform",
    "rate_match",
    "rate_recover",
    "sc_decode",
    "scl_decode",
    "shortening_pattern",
]
