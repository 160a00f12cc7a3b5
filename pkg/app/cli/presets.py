"""Scenario presets for the published cellular and multibeam satellite campaigns."""

from __future__ import annotations

from typing import Dict, List

from app.core.models.campaign import CampaignConfig, ScenarioPreset
from app.core.models.channel import ChannelConfig, SatelliteParams
from app.core.models.enums import ChannelModelKind, OperatingAxis, PowerConstraintKind
from app.core.models.system import PowerConstraintSet, SystemConfig

CELLULAR_SNR_GRID = [0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0]
SATELLITE_POWER_GRID = [10.0, 14.0, 18.0, 22.0, 26.0, 30.0]


class UnknownScenarioError(KeyError):
    """Raised when a preset name is not registered."""

    pass


def cellular(name: str, num_tx_antennas: int, alpha: float) -> ScenarioPreset:
    """K = 6 users in M = 3 groups of two, i.i.d. Rayleigh channel, sum-power constraint."""
    system = SystemConfig(
        num_tx_antennas=num_tx_antennas,
        num_users=6,
        num_groups=3,
        group_map=[0, 0, 1, 1, 2, 2],
        power_constraints=PowerConstraintSet(
            kind=PowerConstraintKind.SUM_POWER,
            num_tx_antennas=num_tx_antennas,
            limits=[1.0],
        ),
        csit_alpha=alpha,
    )
    config = CampaignConfig(
        scenario_id=name,
        system=system,
        channel=ChannelConfig(model=ChannelModelKind.RAYLEIGH_IID, csit_alpha=alpha),
        operating_axis=OperatingAxis.SNR_DB,
        operating_points=list(CELLULAR_SNR_GRID),
    )
    return ScenarioPreset(
        name=name,
        description=f"MMF throughput vs SNR, α = {alpha}, N_t = {num_tx_antennas}, K = 6, 2 users per group",
        config=config,
    )


def satellite(name: str, alpha: float) -> ScenarioPreset:
    """GEO satellite, 7 beams with one feed each, 2 users per beam, per-antenna constraints."""
    params = SatelliteParams(num_beams=7, users_per_beam=2)
    num_users = params.num_users
    system = SystemConfig(
        num_tx_antennas=params.num_beams,
        num_users=num_users,
        num_groups=params.num_beams,
        group_map=[k // params.users_per_beam for k in range(num_users)],
        power_constraints=PowerConstraintSet.per_antenna([1.0] * params.num_beams),
        csit_alpha=alpha,
    )
    config = CampaignConfig(
        scenario_id=name,
        system=system,
        channel=ChannelConfig(
            model=ChannelModelKind.MULTIBEAM_GEO, csit_alpha=alpha, satellite_params=params
        ),
        operating_axis=OperatingAxis.POWER_DBW,
        operating_points=list(SATELLITE_POWER_GRID),
    )
    return ScenarioPreset(
        name=name,
        description=f"MMF throughput vs per-antenna power, α = {alpha}, N_t = 7, K = 14, 2 users per beam",
        config=config,
    )


PRESETS: Dict[str, ScenarioPreset] = {
    preset.name: preset
    for preset in [
        cellular("fig2", 6, 0.8),
        cellular("fig3", 6, 0.6),
        cellular("fig4", 4, 0.8),
        cellular("fig5", 4, 0.6),
        satellite("fig6", 0.8),
    ]
}


def preset_names() -> List[str]:
    return sorted(PRESETS)


def get_preset(name: str) -> ScenarioPreset:
    """
    Look up a preset by name.

    Raises:
        UnknownScenarioError: If no preset has that name; the message lists the valid ones.
    """
    try:
        return PRESETS[name]
    except KeyError:
        raise UnknownScenarioError(
            f"unknown scenario {name!r}; valid presets: {', '.join(preset_names())}"
        ) from None
