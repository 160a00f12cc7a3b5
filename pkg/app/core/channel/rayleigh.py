from __future__ import annotations

import numpy as np

from app.core.models.channel import ChannelConfig

from .base import BaseChannelModel
from .noise import complex_gaussian


def gen_rayleigh(num_tx_antennas: int, num_users: int, seed: int) -> np.ndarray:
    """N_t × K matrix of i.i.d. CN(0, 1) entries."""
    if num_tx_antennas < 1 or num_users < 1:
        raise ValueError("N_t and K must be positive")
    rng = np.random.default_rng(seed)
    return complex_gaussian(rng, (num_tx_antennas, num_users), 1.0)


class RayleighChannel(BaseChannelModel):
    def __init__(self, config: ChannelConfig, num_tx_antennas: int, num_users: int):
        super().__init__("rayleigh_iid", config, num_tx_antennas, num_users)

    def generate(self, seed: int) -> np.ndarray:
        return gen_rayleigh(self.num_tx_antennas, self.num_users, seed)
