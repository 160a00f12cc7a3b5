"""
Transmit signal, power constraints and SINRs of the multigroup multicast downlink.

Received gains |h_kᴴ p_j|² are computed once as a K × (M+1) matrix; column 0
belongs to the common precoder and column 1 + m to the private precoder of group m.
"""

from __future__ import annotations

import logging
from typing import NamedTuple, Sequence

import numpy as np

from app.core.models.precoder import PrecoderSet
from app.core.models.system import PowerConstraintSet

logger = logging.getLogger(__name__)


class SystemModelError(Exception):
    """Raised on dimension mismatches and, in strict mode, infeasible common-rate splits."""

    pass


class PowerCheck(NamedTuple):
    feasible: bool
    slack: np.ndarray


def superpose(precoders: PrecoderSet, symbols: np.ndarray) -> np.ndarray:
    """
    x = p_c·s_c + Σ_m p_m·s_m.

    `symbols` is ordered [s_c, s_1, …, s_M]; a second axis of length S yields one
    transmit vector per channel use (N_t × S).
    """
    symbols = np.asarray(symbols, dtype=np.complex128)
    expected = precoders.num_groups + 1
    if symbols.ndim not in (1, 2) or symbols.shape[0] != expected:
        raise SystemModelError(
            f"expected {expected} stream symbols, got shape {symbols.shape}"
        )
    return precoders.matrix @ symbols


def used_power(precoders: PrecoderSet, constraints: PowerConstraintSet) -> np.ndarray:
    """p_cᴴ D_l p_c + Σ_m p_mᴴ D_l p_m for every constraint l."""
    if constraints.num_tx_antennas != precoders.num_tx_antennas:
        raise SystemModelError("power constraints and precoders differ in N_t")
    antenna_power = np.sum(np.abs(precoders.matrix) ** 2, axis=1)
    return constraints.shaping_diagonals @ antenna_power


def check_power(
    precoders: PrecoderSet, constraints: PowerConstraintSet, tolerance: float = 1e-6
) -> PowerCheck:
    """Whether every constraint holds within a relative tolerance, with slack P_l − used."""
    limits = np.asarray(constraints.limits, dtype=np.float64)
    slack = limits - used_power(precoders, constraints)
    allowed = tolerance * np.maximum(limits, np.finfo(np.float64).tiny)
    return PowerCheck(feasible=bool(np.all(slack >= -allowed)), slack=slack)


def received_gains(channel: np.ndarray, precoders: PrecoderSet) -> np.ndarray:
    """|h_kᴴ p_j|² as a K × (M+1) matrix."""
    channel = np.asarray(channel, dtype=np.complex128)
    if channel.ndim != 2 or channel.shape[0] != precoders.num_tx_antennas:
        raise SystemModelError(
            f"channel of shape {channel.shape} does not match N_t = {precoders.num_tx_antennas}"
        )
    return np.abs(channel.conj().T @ precoders.matrix) ** 2


def common_sinrs(gains: np.ndarray, noise_variance: float) -> np.ndarray:
    """γ_{c,k} for every user (last axis holds the M+1 streams)."""
    interference = gains[..., 1:].sum(axis=-1)
    return gains[..., 0] / (interference + noise_variance)


def private_sinrs(
    gains: np.ndarray, group_map: Sequence[int], noise_variance: float
) -> np.ndarray:
    """γ_k for every user; the common stream is assumed removed by SIC."""
    groups = np.asarray(group_map)
    num_groups = gains.shape[-1] - 1
    own_mask = np.eye(num_groups, dtype=bool)[groups]
    privates = gains[..., 1:]
    desired = np.where(own_mask, privates, 0.0).sum(axis=-1)
    interference = np.where(own_mask, 0.0, privates).sum(axis=-1)
    return desired / (interference + noise_variance)


def _user_gains(h_k: np.ndarray, precoders: PrecoderSet) -> np.ndarray:
    h_k = np.asarray(h_k, dtype=np.complex128).reshape(-1, 1)
    return received_gains(h_k, precoders)[0]


def sinr_common(
    h_k: np.ndarray, precoders: PrecoderSet, group_of_k: int, noise_variance: float
) -> float:
    """
    γ_{c,k} = |h_kᴴ p_c|² / (|h_kᴴ p_μ(k)|² + Σ_{j≠μ(k)} |h_kᴴ p_j|² + σ_n²).

    Every private stream interferes, so the user's group does not change the value.
    """
    if not 0 <= group_of_k < precoders.num_groups:
        raise SystemModelError(f"group {group_of_k} outside [0, {precoders.num_groups})")
    return float(common_sinrs(_user_gains(h_k, precoders), noise_variance))


def sinr_private(
    h_k: np.ndarray, precoders: PrecoderSet, group_of_k: int, noise_variance: float
) -> float:
    """γ_k = |h_kᴴ p_μ(k)|² / (Σ_{j≠μ(k)} |h_kᴴ p_j|² + σ_n²)."""
    if not 0 <= group_of_k < precoders.num_groups:
        raise SystemModelError(f"group {group_of_k} outside [0, {precoders.num_groups})")
    return float(private_sinrs(_user_gains(h_k, precoders), [group_of_k], noise_variance)[0])
