from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np

from app.core.models.channel import ChannelConfig, ChannelRealization

from .csit import apply_csit_error


class ChannelError(Exception):
    """Raised when a channel cannot be generated (e.g. invalid satellite geometry)."""

    pass


class BaseChannelModel(ABC):
    """
    Base interface for channel generators.

    - RayleighChannel: i.i.d. CN(0, 1) entries (cellular scenarios).
    - MultibeamSatelliteChannel: GEO multibeam link budget with rain fading.
    """

    def __init__(self, name: str, config: ChannelConfig, num_tx_antennas: int, num_users: int):
        self.name = name
        self.config = config
        self.num_tx_antennas = num_tx_antennas
        self.num_users = num_users

    @abstractmethod
    def generate(self, seed: int) -> np.ndarray:
        """
        Draw a true channel matrix H (N_t × K).

        Args:
            seed: Seed of this draw; equal seeds give identical matrices.

        Raises:
            ChannelError: If the configured geometry is invalid.
        """
        raise NotImplementedError

    def realization(self, channel_seed: int, error_seed: int) -> ChannelRealization:
        """True channel plus the imperfect-CSIT split H = Ĥ + H̃."""
        return apply_csit_error(
            self.generate(channel_seed),
            self.config.csit_alpha,
            self.config.power_for_error_scaling,
            error_seed,
        )

    def __str__(self) -> str:
        return f"<{self.__class__.__name__} name={self.name} Nt={self.num_tx_antennas} K={self.num_users}>"
