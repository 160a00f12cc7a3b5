"""
GEO multibeam downlink with single feed per beam.

Positions are off-nadir angles (degrees) in a flat two-dimensional plane as
seen from the satellite; across a few tenths of a degree this small-angle
picture is accurate, and the angle between a user and a beam boresight is the
Euclidean distance between the two points.

    h_{n,k} = sqrt(G_rx · G(θ_{n,k}) / (L_fs · k_B·T·B)) · 10^(-ξ_k/20) · e^{jφ_k}

The channel is normalised to the thermal noise power, so σ_n² = 1 and
transmit powers are in watts. Draw order per seed: user positions (unless
given), rain attenuation ξ_k, phases φ_k.
"""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np
from scipy import constants
from scipy.special import jv

from app.core.models.channel import ChannelConfig, SatelliteParams

from .base import BaseChannelModel, ChannelError

logger = logging.getLogger(__name__)

# u = PATTERN_SCALE · sinθ / sinθ_3dB puts the half-power point at θ_3dB.
PATTERN_SCALE = 2.07123


def db_to_linear(value_db: float) -> float:
    return float(10 ** (value_db / 10))


def beam_pattern(theta_deg: np.ndarray, half_power_angle_deg: float) -> np.ndarray:
    """Normalised gain (J1(u)/(2u) + 36·J3(u)/u³)², equal to 1 on boresight."""
    theta = np.radians(np.asarray(theta_deg, dtype=np.float64))
    u = PATTERN_SCALE * np.sin(theta) / np.sin(np.radians(half_power_angle_deg))
    on_axis = np.abs(u) < 1e-9
    safe = np.where(on_axis, 1.0, u)
    field = jv(1, safe) / (2 * safe) + 36 * jv(3, safe) / safe**3
    return np.where(on_axis, 1.0, field**2)


def beam_gain(theta_deg: np.ndarray, params: SatelliteParams) -> np.ndarray:
    """Linear beam gain G(θ)."""
    return db_to_linear(params.max_gain_dbi) * beam_pattern(theta_deg, params.half_power_angle_deg)


def free_space_loss(params: SatelliteParams) -> float:
    """(4π d f / c)² at nadir distance d = altitude."""
    distance = params.altitude_km * 1e3
    return float((4 * np.pi * distance * params.carrier_frequency_hz / constants.c) ** 2)


def noise_power(params: SatelliteParams) -> float:
    """k_B · T · B in watts."""
    return float(constants.k * params.noise_temperature_k * params.bandwidth_hz)


def link_gain(params: SatelliteParams) -> float:
    """G_rx / (L_fs · k_B·T·B): everything but the beam gain and fading."""
    return db_to_linear(params.rx_gain_dbi) / (free_space_loss(params) * noise_power(params))


def beam_centres(num_beams: int, spacing_deg: float) -> np.ndarray:
    """Hexagonal lattice points closest to nadir, centre first then ring by ring."""
    rings = 0
    while 1 + 3 * rings * (rings + 1) < num_beams:
        rings += 1
    points = []
    for a in range(-rings, rings + 1):
        for b in range(-rings, rings + 1):
            x = spacing_deg * (a + 0.5 * b)
            y = spacing_deg * (np.sqrt(3) / 2) * b
            points.append((x, y))
    points = np.array(points)
    radius = np.round(np.hypot(points[:, 0], points[:, 1]) / spacing_deg, 9)
    angle = np.mod(np.arctan2(points[:, 1], points[:, 0]), 2 * np.pi)
    order = np.lexsort((np.round(angle, 9), radius))
    return points[order[:num_beams]]


def draw_user_positions(params: SatelliteParams, rng: np.random.Generator) -> np.ndarray:
    """ρ users per beam, uniform over each footprint disc; users of beam n are contiguous."""
    centres = beam_centres(params.num_beams, np.sqrt(3) * params.footprint_radius)
    count = params.num_users
    radius = params.footprint_radius * np.sqrt(rng.uniform(size=count))
    angle = rng.uniform(0.0, 2 * np.pi, size=count)
    offsets = np.column_stack([radius * np.cos(angle), radius * np.sin(angle)])
    return np.repeat(centres, params.users_per_beam, axis=0) + offsets


def off_axis_angles(positions: np.ndarray, centres: np.ndarray) -> np.ndarray:
    """θ_{n,k} as an N_t × K array."""
    delta = centres[:, None, :] - positions[None, :, :]
    return np.hypot(delta[..., 0], delta[..., 1])


def gen_satellite_channel(
    params: SatelliteParams, seed: int, positions: Optional[np.ndarray] = None
) -> np.ndarray:
    """
    Draw the N_t × K multibeam channel.

    Raises:
        ChannelError: If a user lies outside every beam footprint.
    """
    rng = np.random.default_rng(seed)
    centres = beam_centres(params.num_beams, np.sqrt(3) * params.footprint_radius)
    if positions is None and params.user_positions_deg is not None:
        positions = np.asarray(params.user_positions_deg, dtype=np.float64)
    if positions is None:
        positions = draw_user_positions(params, rng)
    positions = np.asarray(positions, dtype=np.float64).reshape(-1, 2)

    theta = off_axis_angles(positions, centres)
    outside = theta.min(axis=0) > params.footprint_radius * (1 + 1e-9)
    if np.any(outside):
        raise ChannelError(f"users {np.flatnonzero(outside).tolist()} lie outside every footprint")

    count = positions.shape[0]
    rain_db = np.exp(rng.normal(params.rain_log_mean, params.rain_log_std, size=count))
    phase = rng.uniform(0.0, 2 * np.pi, size=count)
    fading = 10 ** (-rain_db / 20) * np.exp(1j * phase)
    amplitude = np.sqrt(link_gain(params) * beam_gain(theta, params))
    return amplitude * fading[None, :]


class MultibeamSatelliteChannel(BaseChannelModel):
    def __init__(self, config: ChannelConfig, num_tx_antennas: int, num_users: int):
        super().__init__("multibeam_geo", config, num_tx_antennas, num_users)
        self.params = config.satellite_params or SatelliteParams()
        if self.params.num_beams != num_tx_antennas or self.params.num_users != num_users:
            raise ChannelError(
                f"satellite geometry ({self.params.num_beams} beams, {self.params.num_users} users) "
                f"does not match N_t = {num_tx_antennas}, K = {num_users}"
            )
        logger.debug(
            "satellite link gain %.2f dB (boresight incl. beam gain %.2f dB)",
            10 * np.log10(link_gain(self.params)),
            10 * np.log10(link_gain(self.params)) + self.params.max_gain_dbi,
        )

    def generate(self, seed: int) -> np.ndarray:
        return gen_satellite_channel(self.params, seed)
