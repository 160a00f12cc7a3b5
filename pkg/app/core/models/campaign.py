from __future__ import annotations

from typing import Annotated, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .amc import AmcConfig
from .channel import ChannelConfig
from .coding import PolarSettings
from .enums import OperatingAxis, PointStatus, PowerConstraintKind, Strategy
from .precoder import OptimizerConfig
from .system import PowerConstraintSet, SystemConfig


def _default_backoff_grid() -> List[float]:
    return [0.5 * i for i in range(9)]


class CampaignConfig(BaseModel):
    """
    A full Monte-Carlo campaign: scenario, operating-point sweep and seeds.

    The power constraints in `system` fix the constraint family; their limits are
    replaced per operating point (see `constraints_at`).
    """

    scenario_id: str = Field(..., description="Name written to the results file.")
    system: SystemConfig = Field(..., description="Antennas, users, groups, α, strategy.")
    channel: ChannelConfig = Field(..., description="Channel generator and CSIT model.")
    amc: AmcConfig = Field(default_factory=AmcConfig, description="AMC parameters.")
    optimizer: OptimizerConfig = Field(
        default_factory=OptimizerConfig, description="Precoder optimizer settings."
    )
    polar: PolarSettings = Field(default_factory=PolarSettings, description="CRC/list settings.")
    strategies: List[Strategy] = Field(
        default_factory=lambda: [Strategy.RSMA, Strategy.SDMA],
        description="Strategies simulated on identical seeds.",
    )
    num_realizations: Annotated[int, Field(ge=1)] = Field(
        default=100, description="Monte-Carlo realizations L_mc per operating point."
    )
    operating_axis: OperatingAxis = Field(
        default=OperatingAxis.SNR_DB,
        description="snr_db: sum power over σ_n²; power_dbw: per-antenna power.",
    )
    operating_points: List[float] = Field(
        ..., min_length=1, description="Swept SNR (dB) or per-antenna power (dBW)."
    )
    master_seed: Annotated[int, Field(ge=0, lt=2**63)] = Field(
        default=0, description="Root of every derived seed."
    )
    estimate_draws: Annotated[int, Field(ge=1)] = Field(
        default=1, description="Independent estimates Ĥ per operating point."
    )
    redraw_estimate: bool = Field(
        default=False, description="Draw a fresh Ĥ (and precoders) per realization."
    )
    calibrate_backoff: bool = Field(
        default=False, description="Search the back-off grid per operating point."
    )
    backoff_grid: List[Annotated[float, Field(ge=0.0)]] = Field(
        default_factory=_default_backoff_grid, min_length=1, description="Back-off candidates (dB)."
    )
    target_bler: Annotated[float, Field(ge=0.0, le=1.0)] = Field(
        default=0.1, description="Per-user BLER ceiling used by calibration."
    )
    calibration_realizations: Annotated[int, Field(ge=1)] = Field(
        default=20, description="Realizations per calibration grid point."
    )
    per_class_backoff: bool = Field(
        default=False,
        description="Calibrate common and private back-off independently (grid product).",
    )
    max_log_llr: bool = Field(default=False, description="Max-log demapping instead of exact LLRs.")
    precoder_path: Optional[str] = Field(
        default=None, description="Load precoders from this file instead of optimizing."
    )

    model_config = ConfigDict(
        use_enum_values=True,
        json_schema_extra={
            "example": {
                "scenario_id": "fig4",
                "system": SystemConfig.model_config["json_schema_extra"]["example"],
                "channel": {"model": "rayleigh_iid", "csit_alpha": 0.8},
                "num_realizations": 20,
                "operating_points": [10.0, 20.0, 30.0],
                "master_seed": 7,
            }
        },
    )

    @model_validator(mode="after")
    def _check(self) -> "CampaignConfig":
        if self.channel.csit_alpha != self.system.csit_alpha:
            raise ValueError("system and channel disagree on α")
        if not self.strategies:
            raise ValueError("at least one strategy is required")
        sat = self.channel.satellite_params
        if sat is not None and (
            sat.num_beams != self.system.num_tx_antennas or sat.num_users != self.system.num_users
        ):
            raise ValueError("satellite geometry does not match N_t and K")
        return self

    @property
    def channel_uses_per_realization(self) -> int:
        return self.amc.stream_length

    @property
    def estimates_per_point(self) -> int:
        return self.num_realizations if self.redraw_estimate else self.estimate_draws

    def total_power_at(self, point: float) -> float:
        """Total transmit power at an operating point (linear)."""
        if self.operating_axis == OperatingAxis.SNR_DB:
            return float(10 ** (point / 10) * self.system.noise_variance)
        return float(10 ** (point / 10) * self.system.num_tx_antennas)

    def constraints_at(self, point: float) -> PowerConstraintSet:
        n_t = self.system.num_tx_antennas
        total = self.total_power_at(point)
        if self.system.power_constraints.kind == PowerConstraintKind.SUM_POWER:
            return PowerConstraintSet.sum_power(n_t, total)
        return PowerConstraintSet.per_antenna([total / n_t] * n_t)

    def __str__(self) -> str:
        return (
            f"<CampaignConfig {self.scenario_id} points={len(self.operating_points)} "
            f"L_mc={self.num_realizations} S={self.channel_uses_per_realization}>"
        )


class RealizationRecord(BaseModel):
    """Per-user outcome of one Monte-Carlo realization."""

    index: Annotated[int, Field(ge=0)] = Field(..., description="Realization index l.")
    recovered_bits: List[int] = Field(..., description="D_{s,k}^{(l)} per user.")
    common_crc: List[bool] = Field(..., description="Common-stream CRC flag per user.")
    private_crc: List[bool] = Field(..., description="Own private-stream CRC flag per user.")
    block_ok: List[bool] = Field(
        ..., description="True when every required stream of the user decoded correctly."
    )
    channel_uses: Annotated[int, Field(ge=1)] = Field(..., description="S^{(l)}.")

    model_config = ConfigDict(frozen=True)


class OperatingPointResult(BaseModel):
    """Aggregated outcome of one operating point for one strategy."""

    strategy: Strategy = Field(..., description="RSMA or SDMA.")
    operating_point: float = Field(..., description="SNR (dB) or per-antenna power (dBW).")
    status: PointStatus = Field(default=PointStatus.OK, description="ok or invalid.")
    recovered_bits: List[int] = Field(
        default_factory=list, description="Σ_l D_{s,k}^{(l)} per user."
    )
    total_channel_uses: int = Field(default=0, description="Σ_l S^{(l)}.")
    bler: List[float] = Field(default_factory=list, description="BLER per user.")
    mmf_throughput: float = Field(default=0.0, description="min_k Σ_l D_k / Σ_l S (bps/Hz).")
    shannon_bound: float = Field(default=0.0, description="Average-rate MMF value (bps/Hz).")
    assigned_rate: float = Field(
        default=0.0, description="min_m assigned information bits per channel use."
    )
    mcs_summary: str = Field(default="", description="Compact MCS description.")
    backoff_common_db: float = Field(default=0.0)
    backoff_private_db: float = Field(default=0.0)
    calibration_violated: bool = Field(
        default=False, description="No back-off candidate met the BLER target."
    )
    optimizer_converged: bool = Field(default=True)
    seed: int = Field(default=0, description="Master seed of the campaign.")
    message: Optional[str] = Field(default=None, description="Failure reason when invalid.")

    model_config = ConfigDict(use_enum_values=True)

    @property
    def max_bler(self) -> float:
        return max(self.bler) if self.bler else 0.0

    def __str__(self) -> str:
        return (
            f"<OperatingPointResult {self.strategy} @ {self.operating_point:g}: "
            f"T={self.mmf_throughput:.4f} bound={self.shannon_bound:.4f} {self.status}>"
        )


class CampaignResult(BaseModel):
    """Every operating point of a campaign, in (strategy, point) order."""

    scenario_id: str = Field(..., description="Scenario name.")
    operating_axis: OperatingAxis = Field(..., description="Swept quantity.")
    num_users: int = Field(..., description="K, the width of the per-user columns.")
    points: List[OperatingPointResult] = Field(default_factory=list)

    model_config = ConfigDict(use_enum_values=True)

    def for_strategy(self, strategy: Strategy) -> List[OperatingPointResult]:
        return [p for p in self.points if p.strategy == strategy]

    def throughput_curve(self, strategy: Strategy) -> np.ndarray:
        """(point, throughput, bound) rows of one strategy."""
        rows = [
            (p.operating_point, p.mmf_throughput, p.shannon_bound)
            for p in self.for_strategy(strategy)
        ]
        return np.array(rows, dtype=np.float64).reshape(-1, 3)

    def __str__(self) -> str:
        return f"<CampaignResult {self.scenario_id} points={len(self.points)}>"


class ScenarioPreset(BaseModel):
    """Named campaign reproducing one published figure."""

    name: str = Field(..., description="Preset name, e.g. 'fig4'.")
    description: str = Field(..., description="Figure caption summary.")
    config: CampaignConfig = Field(..., description="Full campaign configuration.")

    model_config = ConfigDict(frozen=True)

    def __str__(self) -> str:
        return f"<ScenarioPreset {self.name}: {self.description}>"
