from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from app.core.channel.noise import complex_gaussian
from app.core.models.precoder import AverageRateReport, PrecoderSet
from app.core.models.system import SystemConfig
from app.core.sysmodel import SystemModelError, sample_rates
from app.core.sysmodel.rates import SPLIT_TOLERANCE

logger = logging.getLogger(__name__)


def default_error_variance(config: SystemConfig) -> float:
    """σ_e² = P^-α with P the total transmit power of the constraints."""
    return float(config.power_constraints.total_power ** (-config.csit_alpha))


def sample_channels(
    estimate: np.ndarray, error_variance: float, num_samples: int, seed: int
) -> np.ndarray:
    """num_samples draws of Ĥ + H̃ stacked as (num_samples, N_t, K)."""
    estimate = np.asarray(estimate, dtype=np.complex128)
    if error_variance == 0:
        return np.broadcast_to(estimate, (num_samples, *estimate.shape)).copy()
    rng = np.random.default_rng(seed)
    return estimate[None] + complex_gaussian(rng, (num_samples, *estimate.shape), error_variance)


def average_rates(
    precoders: PrecoderSet,
    estimate: np.ndarray,
    config: SystemConfig,
    num_samples: int,
    seed: int,
    error_variance: Optional[float] = None,
) -> AverageRateReport:
    """
    Average R_c and r_m over channels H = Ĥ + H̃ drawn around the estimate.

    A stored split with Σ C_m above R̄_c is scaled down to R̄_c and flagged.
    """
    if num_samples < 1:
        raise ValueError("num_samples must be at least 1")
    estimate = np.asarray(estimate, dtype=np.complex128)
    if estimate.shape != (config.num_tx_antennas, config.num_users):
        raise SystemModelError(f"estimate of shape {estimate.shape} does not match the system")
    if precoders.num_groups != config.num_groups:
        raise SystemModelError("precoders and system disagree on M")

    variance = default_error_variance(config) if error_variance is None else error_variance
    channels = sample_channels(estimate, variance, num_samples, seed)
    rates = sample_rates(channels, precoders.matrix, config.group_map, config.noise_variance)
    common_rate = float(rates.common_rate.mean())
    private_rates = rates.group_private_rates.mean(axis=0)

    split = np.array(precoders.common_rate_split, dtype=np.float64)
    rescaled = bool(split.sum() > common_rate + SPLIT_TOLERANCE)
    if rescaled:
        logger.warning(
            "common-rate split %.6f exceeds average common rate %.6f, rescaling",
            split.sum(),
            common_rate,
        )
        split *= common_rate / split.sum()

    return AverageRateReport(
        common_rate=common_rate,
        private_rates=private_rates,
        common_rate_split=split,
        mmf_value=float((split + private_rates).min()),
        num_samples=num_samples,
        split_rescaled=rescaled,
    )
