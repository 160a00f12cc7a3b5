"""
Channel draws of a campaign.

Seeds depend on the draw index and the channel seed but not on the operating point, so every point
of a sweep sees the same underlying channels (common random numbers) and only
the CSIT error variance changes with power.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from app.core.models.campaign import CampaignConfig
from app.core.models.channel import ChannelConfig, ChannelRealization
from app.core.seeding import SeedPurpose, derive_seed

from . import get_channel_model


def point_channel_config(campaign: CampaignConfig, point: float) -> ChannelConfig:
    """Channel config whose error scaling power matches the operating point."""
    return campaign.channel.model_copy(
        update={"power_for_error_scaling": campaign.total_power_at(point)}
    )


def draw_estimate(campaign: CampaignConfig, point: float, draw: int) -> ChannelRealization:
    """True channel and CSIT split of estimate draw `draw` at an operating point."""
    config = point_channel_config(campaign, point)
    model = get_channel_model(config, campaign.system.num_tx_antennas, campaign.system.num_users)
    return model.realization(
        derive_seed(campaign.master_seed, SeedPurpose.ESTIMATE, draw, config.seed),
        derive_seed(campaign.master_seed, SeedPurpose.CSIT_ERROR, draw, config.seed),
    )


def draw_true_channel(
    campaign: CampaignConfig,
    point: float,
    estimate: np.ndarray,
    realization: int,
    master: Optional[int] = None,
) -> ChannelRealization:
    """H = Ĥ + H̃ around a fixed estimate for one Monte-Carlo realization."""
    config = point_channel_config(campaign, point)
    master = campaign.master_seed if master is None else master
    return ChannelRealization.from_estimate(
        estimate,
        config.error_variance,
        derive_seed(master, SeedPurpose.REALIZATION, realization, config.seed),
    )
