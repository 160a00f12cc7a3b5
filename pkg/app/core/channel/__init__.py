from app.core.models.channel import ChannelConfig
from app.core.models.enums import ChannelModelKind

from .base import BaseChannelModel, ChannelError
from .csit import apply_csit_error, csit_error_variance
from .noise import awgn, complex_gaussian
from .rayleigh import RayleighChannel, gen_rayleigh
from .satellite import MultibeamSatelliteChannel, beam_centres, beam_gain, gen_satellite_channel


def get_channel_model(
    config: ChannelConfig, num_tx_antennas: int, num_users: int
) -> BaseChannelModel:
    if config.model == ChannelModelKind.MULTIBEAM_GEO:
        return MultibeamSatelliteChannel(config, num_tx_antennas, num_users)
    return RayleighChannel(config, num_tx_antennas, num_users)


__all__ = [
    "BaseChannelModel",
    "ChannelError",
    "MultibeamSatelliteChannel",
    "RayleighChannel",
    "apply_csit_error",
    "awgn",
    "beam_centres",
    "beam_gain",
    "complex_gaussian",
    "csit_error_variance",
    "gen_rayleigh",
    "gen_satellite_channel",
    "get_channel_model",
]
