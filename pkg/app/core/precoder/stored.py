from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional, Union

import numpy as np

from app.core.models.enums import Strategy
from app.core.models.precoder import OptimizationResult, OptimizerConfig, PrecoderSet
from app.core.models.system import SystemConfig
from app.core.seeding import derive_seed
from app.core.sysmodel import check_power

from .base import BasePrecoderDesigner, PrecoderError
from .rates import average_rates
from .sca import EVALUATION_KEY
from .storage import load_precoders

logger = logging.getLogger(__name__)


class StoredPrecoderDesigner(BasePrecoderDesigner):
    """
    Precoders computed elsewhere and read from a file.

    The set is used as is at every operating point; only its average rates are
    evaluated on the given estimate.
    """

    def __init__(self, path: Union[str, Path], options: Optional[OptimizerConfig] = None):
        super().__init__("stored")
        self.path = Path(path)
        self.options = options or OptimizerConfig()

    def design(
        self,
        estimate: np.ndarray,
        config: SystemConfig,
        seed: int,
        warm_start: Optional[PrecoderSet] = None,
        error_variance: Optional[float] = None,
    ) -> OptimizationResult:
        precoders = load_precoders(self.path, config)
        if config.strategy == Strategy.SDMA and precoders.strategy != Strategy.SDMA:
            raise PrecoderError(f"{self.path} holds RSMA precoders but SDMA was requested")
        check = check_power(precoders, config.power_constraints)
        if not check.feasible:
            raise PrecoderError(
                f"stored precoders violate the power constraints (slack {np.round(check.slack, 6).tolist()})"
            )
        rates = average_rates(
            precoders,
            estimate,
            config,
            self.options.evaluation_samples,
            derive_seed(seed, EVALUATION_KEY),
            error_variance,
        )
        logger.info("stored precoders from %s: average-rate MMF %.4f bps/Hz", self.path, rates.mmf_value)
        return OptimizationResult(precoders=precoders, rates=rates, objective_trace=[], converged=True)
