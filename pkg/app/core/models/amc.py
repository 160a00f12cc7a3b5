from __future__ import annotations

from typing import Annotated, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .enums import StreamClass
from .phy import ModulationScheme


class AmcConfig(BaseModel):
    """Adaptive modulation and coding parameters."""

    alphabet_set: List[Annotated[int, Field(ge=2, le=8)]] = Field(
        default_factory=lambda: [2, 4, 6, 8],
        description="Candidate bits-per-symbol, ascending (4/16/64/256-QAM).",
    )
    max_code_rate: Annotated[float, Field(gt=0.0, le=1.0)] = Field(
        default=0.9, description="Maximum code rate β."
    )
    max_order_log: Annotated[int, Field(ge=2)] = Field(
        default=8, description="m′, log2 of the largest alphabet."
    )
    stream_length: Annotated[int, Field(ge=1)] = Field(
        default=256, description="Channel uses S per frame."
    )
    backoff_common_db: Annotated[float, Field(ge=0.0)] = Field(
        default=0.0, description="Energy back-off applied to R̄_c (dB)."
    )
    backoff_private_db: Annotated[float, Field(ge=0.0)] = Field(
        default=0.0, description="Energy back-off applied to every r̄_m (dB)."
    )

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "alphabet_set": [2, 4, 6, 8],
                "max_code_rate": 0.9,
                "max_order_log": 8,
                "stream_length": 256,
                "backoff_common_db": 1.0,
                "backoff_private_db": 1.0,
            }
        },
    )

    @field_validator("alphabet_set")
    @classmethod
    def _ascending_even(cls, value: List[int]) -> List[int]:
        if not value:
            raise ValueError("alphabet_set is empty")
        if value != sorted(set(value)) or any(m % 2 for m in value):
            raise ValueError("alphabet_set must list ascending square-QAM orders")
        return value

    @model_validator(mode="after")
    def _cap(self) -> "AmcConfig":
        if self.max_order_log > self.alphabet_set[-1]:
            raise ValueError("m′ exceeds the largest available alphabet")
        return self

    def with_backoff(self, common_db: float, private_db: float) -> "AmcConfig":
        return self.model_copy(
            update={"backoff_common_db": common_db, "backoff_private_db": private_db}
        )

    def __str__(self) -> str:
        return (
            f"<AmcConfig β={self.max_code_rate} S={self.stream_length} "
            f"backoff=({self.backoff_common_db}, {self.backoff_private_db}) dB>"
        )


class StreamMcs(BaseModel):
    """MCS of one stream l: modulation ℳ_l, block length N_l, rate r_l."""

    stream: StreamClass = Field(..., description="Common or private.")
    group: Optional[int] = Field(default=None, description="Group of a private stream.")
    scheme: ModulationScheme = Field(..., description="Alphabet ℳ_l.")
    block_length: Annotated[int, Field(ge=1)] = Field(..., description="N_l = S·m_l.")
    coded_info_bits: Annotated[int, Field(ge=0)] = Field(
        ..., description="K_l = r_l·N_l, CRC included."
    )
    payload_bits: Annotated[int, Field(ge=0)] = Field(
        ..., description="Message bits carried: K_l − crc_length, 0 when disabled."
    )
    average_rate: Annotated[float, Field(ge=0.0)] = Field(
        ..., description="AR after back-off that drove the selection."
    )

    model_config = ConfigDict(frozen=True, use_enum_values=True)

    @property
    def code_rate(self) -> float:
        return self.coded_info_bits / self.block_length

    @property
    def enabled(self) -> bool:
        return self.payload_bits > 0

    @property
    def label(self) -> str:
        return "c" if self.stream == StreamClass.COMMON else f"p{self.group}"

    def __str__(self) -> str:
        return f"{self.label}:{self.scheme.name}/{self.coded_info_bits}/{self.block_length}"


class McsAssignment(BaseModel):
    """MCS for the common stream and the M private streams, plus the common payload split."""

    common: StreamMcs = Field(..., description="Common stream MCS.")
    private: List[StreamMcs] = Field(..., description="Private stream MCS per group.")
    common_payload_split: List[Annotated[int, Field(ge=0)]] = Field(
        ..., description="K_{c,m}: bits of group m inside the common message."
    )
    stream_length: Annotated[int, Field(ge=1)] = Field(..., description="S.")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check(self) -> "McsAssignment":
        if len(self.common_payload_split) != len(self.private):
            raise ValueError("one common payload share per group is required")
        if sum(self.common_payload_split) != self.common.payload_bits:
            raise ValueError("common payload shares must add up to the common payload")
        return self

    @property
    def num_groups(self) -> int:
        return len(self.private)

    def group_payload(self, group: int) -> int:
        """Message bits of W_m: its common share plus its private payload."""
        return self.common_payload_split[group] + self.private[group].payload_bits

    @property
    def assigned_mmf_rate(self) -> float:
        """min_m of the information bits per channel use assigned to group m."""
        return min(self.group_payload(m) for m in range(self.num_groups)) / self.stream_length

    @property
    def summary(self) -> str:
        return " ".join(str(s) for s in [self.common, *self.private])

    def __str__(self) -> str:
        return f"<McsAssignment {self.summary}>"


class CalibrationPoint(BaseModel):
    """Outcome of one back-off candidate during calibration."""

    backoff_common_db: float = Field(..., description="Common-stream back-off (dB).")
    backoff_private_db: float = Field(..., description="Private-stream back-off (dB).")
    mmf_throughput: float = Field(..., description="Measured MMF throughput (bps/Hz).")
    bler: List[float] = Field(..., description="Measured BLER per user.")

    model_config = ConfigDict(frozen=True)

    @property
    def max_bler(self) -> float:
        return max(self.bler) if self.bler else 0.0


class BackoffCalibration(BaseModel):
    """Back-off pair chosen by calibration and the grid it was chosen from."""

    backoff_common_db: float = Field(..., description="Selected common back-off (dB).")
    backoff_private_db: float = Field(..., description="Selected private back-off (dB).")
    violated: bool = Field(
        default=False, description="No candidate met the BLER target; the largest back-off is returned."
    )
    points: List[CalibrationPoint] = Field(default_factory=list, description="Every evaluated candidate.")

    model_config = ConfigDict(frozen=True)

    def __str__(self) -> str:
        flag = " (violated)" if self.violated else ""
        return f"<BackoffCalibration c={self.backoff_common_db} p={self.backoff_private_db} dB{flag}>"
