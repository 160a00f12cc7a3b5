from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from app.core.models.precoder import OptimizationResult, PrecoderSet
from app.core.models.system import SystemConfig


class PrecoderError(Exception):
    """Raised when precoders cannot be produced under the given power constraints."""

    pass


class BasePrecoderDesigner(ABC):
    """
    Base interface for precoder designers.

    Designers turn a CSIT estimate Ĥ into a PrecoderSet and its average rates.
    - SCAPrecoderDesigner: sample-average max-min-fair optimization.
    - StoredPrecoderDesigner: precoders loaded from a file, evaluated unchanged.
    """

    def __init__(self, name: str):
        self.name = name

    @abstractmethod
    def design(
        self,
        estimate: np.ndarray,
        config: SystemConfig,
        seed: int,
        warm_start: Optional[PrecoderSet] = None,
        error_variance: Optional[float] = None,
    ) -> OptimizationResult:
        """
        Produce precoders for the strategy in `config`.

        Args:
            estimate: CSIT estimate Ĥ (N_t × K).
            config: System configuration, including power constraints and α.
            seed: Seed for channel sampling.
            warm_start: Optional SDMA solution used as an extra RSMA starting point.
            error_variance: Overrides σ_e² = P^-α (0 means perfect CSIT).

        Returns:
            OptimizationResult with the precoders and their average rates.

        Raises:
            PrecoderError: If the constraints admit no usable precoder.
        """
        raise NotImplementedError

    def rescaled(
        self,
        precoders: PrecoderSet,
        estimate: np.ndarray,
        config: SystemConfig,
        seed: int,
        error_variance: Optional[float] = None,
    ) -> Optional[OptimizationResult]:
        """
        Another operating point's precoders rescaled to the power constraints in `config`.

        Returns None when the designer does not take over designs across operating points.
        """
        return None

    def __str__(self) -> str:
        return f"<{self.__class__.__name__} name={self.name}>"
