"""
Annotated numpy types for pydantic models.

Arrays stored on models are copied on validation and marked read-only.
"""

from __future__ import annotations

from typing import Annotated

import numpy as np
from pydantic import BeforeValidator


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


def _complex_array(value) -> np.ndarray:
    return _frozen(np.array(value, dtype=np.complex128))


def _real_array(value) -> np.ndarray:
    return _frozen(np.array(value, dtype=np.float64))


def _bit_array(value) -> np.ndarray:
    array = np.array(value, dtype=np.uint8)
    if array.size and array.max() > 1:
        raise ValueError("bit arrays may only hold 0 and 1")
    return _frozen(array)


ComplexArray = Annotated[np.ndarray, BeforeValidator(_complex_array)]
RealArray = Annotated[np.ndarray, BeforeValidator(_real_array)]
BitArray = Annotated[np.ndarray, BeforeValidator(_bit_array)]
