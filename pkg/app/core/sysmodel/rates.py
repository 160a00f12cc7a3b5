from __future__ import annotations

import logging
from typing import NamedTuple, Sequence

import numpy as np

from app.core.models.precoder import PrecoderSet, RateReport
from app.core.models.system import SystemConfig

from .signal import SystemModelError, common_sinrs, private_sinrs, received_gains

logger = logging.getLogger(__name__)

# Slack on Σ_m C_m ≤ R_c for splits computed in floating point.
SPLIT_TOLERANCE = 1e-9


class SampleRates(NamedTuple):
    common_rate: np.ndarray
    group_private_rates: np.ndarray


def group_minimum(values: np.ndarray, group_map: Sequence[int], num_groups: int) -> np.ndarray:
    """min over the users of each group along the last axis."""
    groups = np.asarray(group_map)
    return np.stack(
        [values[..., groups == m].min(axis=-1) for m in range(num_groups)], axis=-1
    )


def sample_rates(
    channels: np.ndarray, precoder_matrix: np.ndarray, group_map: Sequence[int], noise_variance: float
) -> SampleRates:
    """
    R_c and r_m for a batch of channels.

    channels: (..., N_t, K); precoder_matrix: N_t × (M+1). Returns arrays shaped (...)
    and (..., M).
    """
    gains = np.abs(np.swapaxes(channels.conj(), -1, -2) @ precoder_matrix) ** 2
    num_groups = precoder_matrix.shape[1] - 1
    common = np.log2(1.0 + common_sinrs(gains, noise_variance)).min(axis=-1)
    private = np.log2(1.0 + private_sinrs(gains, group_map, noise_variance))
    return SampleRates(common, group_minimum(private, group_map, num_groups))


def evaluate_group_rates(
    channel: np.ndarray,
    precoders: PrecoderSet,
    config: SystemConfig,
    strict: bool = False,
) -> RateReport:
    """
    Rates of one channel realization (columns are users).

    R_{c,k} = log2(1+γ_{c,k}), R_c = min_k R_{c,k}, r_m = min_{k∈𝒢_m} log2(1+γ_k),
    r_{g,m} = C_m + r_m. A split with Σ C_m > R_c is flagged, or raised when strict.
    """
    channel = np.asarray(channel, dtype=np.complex128)
    if channel.ndim != 2 or channel.shape[1] != config.num_users:
        raise SystemModelError(
            f"channel of shape {channel.shape} does not hold K = {config.num_users} columns"
        )
    if precoders.num_groups != config.num_groups:
        raise SystemModelError(
            f"{precoders.num_groups} private precoders for M = {config.num_groups}"
        )

    gains = received_gains(channel, precoders)
    common_per_user = np.log2(1.0 + common_sinrs(gains, config.noise_variance))
    private_per_user = np.log2(1.0 + private_sinrs(gains, config.group_map, config.noise_variance))
    common_rate = float(common_per_user.min())
    group_private = group_minimum(private_per_user, config.group_map, config.num_groups)
    split = precoders.common_rate_split

    feasible = bool(split.sum() <= common_rate + SPLIT_TOLERANCE)
    if not feasible:
        message = f"common-rate split {split.sum():.6f} exceeds R_c = {common_rate:.6f}"
        if strict:
            raise SystemModelError(message)
        logger.debug(message)

    return RateReport(
        common_rates_per_user=common_per_user,
        common_rate=common_rate,
        private_rates_per_user=private_per_user,
        group_private_rates=group_private,
        group_rates=split + group_private,
        split_feasible=feasible,
    )


def split_common_rate(common_rate: float, private_rates: np.ndarray) -> np.ndarray:
    """
    Split R_c over groups to maximise min_m (C_m + r_m).

    Water-filling: C_m = max(0, w − r_m) with the level w chosen so Σ C_m = R_c.
    """
    private_rates = np.asarray(private_rates, dtype=np.float64)
    if common_rate <= 0:
        return np.zeros_like(private_rates)
    ordered = np.sort(private_rates)
    level = ordered[0] + common_rate
    for i in range(1, ordered.size + 1):
        level = (common_rate + ordered[:i].sum()) / i
        if i == ordered.size or level <= ordered[i]:
            break
    return np.maximum(level - private_rates, 0.0)
