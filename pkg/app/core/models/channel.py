from __future__ import annotations

from typing import Annotated, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .arrays import ComplexArray
from .enums import ChannelModelKind


class SatelliteParams(BaseModel):
    """
    GEO multibeam link parameters (single feed per beam, so N_t = num_beams).

    Beam pattern: G(θ) = G_max·(J1(u)/(2u) + 36·J3(u)/u³)², u = 2.07123·sinθ/sinθ_3dB.
    Rain attenuation ξ (dB) is lognormal: ln ξ ~ N(rain_log_mean, rain_log_std²).
    """

    num_beams: Annotated[int, Field(ge=1)] = Field(
        default=7, description="Beams (antenna feeds) N_t."
    )
    users_per_beam: Annotated[int, Field(ge=1)] = Field(
        default=2, description="Users served per beam ρ."
    )
    max_gain_dbi: float = Field(default=52.0, description="Boresight beam gain G_max (dBi).")
    half_power_angle_deg: Annotated[float, Field(gt=0.0)] = Field(
        default=0.2, description="Off-axis angle θ_3dB at which the gain halves (deg)."
    )
    footprint_radius_deg: Optional[Annotated[float, Field(gt=0.0)]] = Field(
        default=None,
        description="Angular radius of a beam footprint; defaults to θ_3dB.",
    )
    altitude_km: Annotated[float, Field(gt=0.0)] = Field(
        default=35786.0, description="Orbit altitude (GEO) in km."
    )
    carrier_frequency_hz: Annotated[float, Field(gt=0.0)] = Field(
        default=20e9, description="Downlink carrier frequency (Ka-band)."
    )
    rx_gain_dbi: float = Field(default=41.7, description="User terminal antenna gain (dBi).")
    noise_temperature_k: Annotated[float, Field(gt=0.0)] = Field(
        default=517.0, description="Receiver system noise temperature (K)."
    )
    bandwidth_hz: Annotated[float, Field(gt=0.0)] = Field(
        default=500e6, description="User link bandwidth (Hz)."
    )
    rain_log_mean: float = Field(
        default=-2.6, description="Mean of ln(rain attenuation in dB)."
    )
    rain_log_std: Annotated[float, Field(ge=0.0)] = Field(
        default=1.63, description="Std. dev. of ln(rain attenuation in dB)."
    )
    user_positions_deg: Optional[List[Tuple[float, float]]] = Field(
        default=None,
        description="Explicit (x, y) off-nadir user angles; drawn per beam when absent.",
    )

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "num_beams": 7,
                "users_per_beam": 2,
                "max_gain_dbi": 52.0,
                "half_power_angle_deg": 0.2,
                "altitude_km": 35786.0,
                "carrier_frequency_hz": 20e9,
            }
        },
    )

    @model_validator(mode="after")
    def _check_positions(self) -> "SatelliteParams":
        if self.user_positions_deg is not None and len(self.user_positions_deg) != self.num_users:
            raise ValueError(
                f"{len(self.user_positions_deg)} user positions for K = {self.num_users}"
            )
        return self

    @property
    def num_users(self) -> int:
        return self.num_beams * self.users_per_beam

    @property
    def footprint_radius(self) -> float:
        return self.footprint_radius_deg or self.half_power_angle_deg

    def __str__(self) -> str:
        return (
            f"<SatelliteParams beams={self.num_beams} rho={self.users_per_beam} "
            f"Gmax={self.max_gain_dbi}dBi θ3dB={self.half_power_angle_deg}°>"
        )


class ChannelConfig(BaseModel):
    """Channel generator selection and imperfect-CSIT parameters."""

    model: ChannelModelKind = Field(
        default=ChannelModelKind.RAYLEIGH_IID, description="Channel generator."
    )
    csit_alpha: Annotated[float, Field(ge=0.0, le=1.0)] = Field(
        ..., description="CSIT scaling factor α."
    )
    power_for_error_scaling: Annotated[float, Field(gt=0.0)] = Field(
        default=1.0,
        description="P in σ_e² = P^-α: sum transmit power, or per-antenna budget × N_t.",
    )
    satellite_params: Optional[SatelliteParams] = Field(
        default=None, description="Required by the multibeam GEO generator."
    )
    seed: Annotated[int, Field(ge=0, lt=2**64)] = Field(
        default=0,
        description="Mixed into every channel-draw seed; changing it redraws the channels and keeps messages and noise.",
    )

    model_config = ConfigDict(
        frozen=True,
        use_enum_values=True,
        json_schema_extra={
            "example": {
                "model": "rayleigh_iid",
                "csit_alpha": 0.8,
                "power_for_error_scaling": 1000.0,
                "seed": 7,
            }
        },
    )

    @model_validator(mode="before")
    @classmethod
    def _fill_satellite(cls, data):
        if isinstance(data, dict) and data.get("satellite_params") is None:
            if data.get("model") in (ChannelModelKind.MULTIBEAM_GEO, ChannelModelKind.MULTIBEAM_GEO.value):
                data = {**data, "satellite_params": SatelliteParams()}
        return data

    @property
    def error_variance(self) -> float:
        """σ_e² = P^-α."""
        return float(self.power_for_error_scaling ** (-self.csit_alpha))

    def __str__(self) -> str:
        return f"<ChannelConfig {self.model} alpha={self.csit_alpha} P={self.power_for_error_scaling:.4g}>"


class ChannelRealization(BaseModel):
    """
    One Monte-Carlo draw: true channel H, transmitter estimate Ĥ and error H̃.

    Columns are users (N_t × K). H = Ĥ + H̃ holds element-wise and exactly.
    """

    true_channel: ComplexArray = Field(..., description="True channel H (N_t × K).")
    estimate: ComplexArray = Field(..., description="CSIT estimate Ĥ (N_t × K).")
    error: ComplexArray = Field(..., description="CSIT error H̃ (N_t × K).")

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @model_validator(mode="after")
    def _check_decomposition(self) -> "ChannelRealization":
        if self.true_channel.ndim != 2:
            raise ValueError("channel matrices must be N_t × K")
        if not (self.true_channel.shape == self.estimate.shape == self.error.shape):
            raise ValueError("H, Ĥ and H̃ must share a shape")
        if not np.array_equal(self.true_channel, self.estimate + self.error):
            raise ValueError("H must equal Ĥ + H̃ exactly")
        return self

    @classmethod
    def from_parts(cls, estimate: np.ndarray, error: np.ndarray) -> "ChannelRealization":
        """Build the triple with H formed as Ĥ + H̃, so the decomposition is exact."""
        estimate = np.asarray(estimate, dtype=np.complex128)
        error = np.asarray(error, dtype=np.complex128)
        return cls(true_channel=estimate + error, estimate=estimate, error=error)

    @classmethod
    def from_estimate(
        cls, estimate: np.ndarray, error_variance: float, seed: int
    ) -> "ChannelRealization":
        """Draw a true channel around a fixed estimate with i.i.d. CN(0, σ_e²) error."""
        # Local import: the channel package depends on these models.
        from app.core.channel.noise import complex_gaussian

        estimate = np.asarray(estimate, dtype=np.complex128)
        rng = np.random.default_rng(seed)
        error = complex_gaussian(rng, estimate.shape, error_variance)
        return cls.from_parts(estimate, error)

    @property
    def num_tx_antennas(self) -> int:
        return self.true_channel.shape[0]

    @property
    def num_users(self) -> int:
        return self.true_channel.shape[1]

    def __str__(self) -> str:
        return f"<ChannelRealization Nt={self.num_tx_antennas} K={self.num_users}>"
