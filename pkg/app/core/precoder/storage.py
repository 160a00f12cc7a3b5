"""
Precoder files.

JSON document with a header and every complex coefficient as a (real, imag)
pair; floats are written with shortest round-trip representation, so a store
followed by a load is bit-exact:

    {
      "format": "rslink-precoders/1",
      "num_tx_antennas": 2, "num_groups": 1, "strategy": "rsma",
      "common": [[1.0, 0.0], [0.0, 0.0]],
      "private": [[[0.0, 0.0], [0.0, 1.0]]],
      "common_rate_split": [0.5]
    }

`private` holds one list of N_t pairs per group.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from app.core.models.enums import Strategy
from app.core.models.precoder import PrecoderSet
from app.core.models.system import SystemConfig

from .base import PrecoderError

logger = logging.getLogger(__name__)

Pair = Tuple[float, float]


class PrecoderFileError(PrecoderError):
    """Raised when a precoder file is malformed or does not fit the system."""

    pass


class PrecoderFile(BaseModel):
    format: Literal["rslink-precoders/1"] = Field(default="rslink-precoders/1")
    num_tx_antennas: int = Field(..., ge=1, description="N_t.")
    num_groups: int = Field(..., ge=1, description="M.")
    strategy: Strategy = Field(..., description="Strategy the precoders were built for.")
    common: List[Pair] = Field(..., description="p_c as (real, imag) pairs.")
    private: List[List[Pair]] = Field(..., description="p_1..p_M as (real, imag) pairs.")
    common_rate_split: List[float] = Field(..., description="C_1..C_M (bps/Hz).")

    model_config = ConfigDict(use_enum_values=True)


def _pairs(vector: np.ndarray) -> List[Pair]:
    return [(float(z.real), float(z.imag)) for z in vector]


def _complex(pairs: List[Pair]) -> np.ndarray:
    return np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)


def store_precoders(precoders: PrecoderSet, path: Union[str, Path]) -> Path:
    path = Path(path)
    document = PrecoderFile(
        num_tx_antennas=precoders.num_tx_antennas,
        num_groups=precoders.num_groups,
        strategy=precoders.strategy,
        common=_pairs(precoders.common),
        private=[_pairs(precoders.private[:, m]) for m in range(precoders.num_groups)],
        common_rate_split=[float(c) for c in precoders.common_rate_split],
    )
    path.write_text(document.model_dump_json(indent=2))
    logger.info("stored %s precoders in %s", precoders.strategy, path)
    return path


def load_precoders(
    path: Union[str, Path], config: Optional[SystemConfig] = None
) -> PrecoderSet:
    """
    Read a precoder file, optionally checking it against a system configuration.

    Raises:
        PrecoderFileError: If the file is unreadable, malformed, internally
            inconsistent, or sized for a different N_t or M.
    """
    path = Path(path)
    try:
        document = PrecoderFile.model_validate_json(path.read_text())
    except OSError as exc:
        raise PrecoderFileError(f"cannot read {path}: {exc}") from exc
    except ValidationError as exc:
        raise PrecoderFileError(f"malformed precoder file {path}: {exc}") from exc

    n_t, m = document.num_tx_antennas, document.num_groups
    if len(document.common) != n_t or any(len(p) != n_t for p in document.private):
        raise PrecoderFileError(f"{path}: vectors do not have N_t = {n_t} entries")
    if len(document.private) != m or len(document.common_rate_split) != m:
        raise PrecoderFileError(
            f"{path}: header declares M = {m} but the file holds {len(document.private)} private precoders"
        )
    if config is not None and (n_t != config.num_tx_antennas or m != config.num_groups):
        raise PrecoderFileError(
            f"{path}: precoders for N_t = {n_t}, M = {m} do not match "
            f"N_t = {config.num_tx_antennas}, M = {config.num_groups}"
        )

    try:
        return PrecoderSet(
            common=_complex(document.common),
            private=np.column_stack([_complex(p) for p in document.private]),
            common_rate_split=np.array(document.common_rate_split, dtype=np.float64),
            strategy=document.strategy,
        )
    except ValidationError as exc:
        raise PrecoderFileError(f"{path}: {exc}") from exc
