from __future__ import annotations

from typing import Annotated, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .arrays import BitArray


class PolarSettings(BaseModel):
    """Campaign-wide polar/CRC choices shared by every stream."""

    crc_length: Annotated[int, Field(ge=0, le=32)] = Field(
        default=16, description="Outer CRC length; 0 disables the CRC."
    )
    crc_polynomial: Annotated[int, Field(ge=0)] = Field(
        default=0x1021,
        description="CRC generator without the leading x^crc_length term.",
    )
    list_size: Annotated[int, Field(ge=1)] = Field(
        default=8, description="SCL list size L."
    )
    design_snr_offset_db: float = Field(
        default=0.0,
        description="Offset added to a stream's operating SNR for code construction.",
    )

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {"crc_length": 16, "crc_polynomial": 4129, "list_size": 8}
        },
    )

    @model_validator(mode="after")
    def _polynomial_fits(self) -> "PolarSettings":
        if self.crc_length and self.crc_polynomial >= 1 << self.crc_length:
            raise ValueError(
                f"polynomial {self.crc_polynomial:#x} does not fit a {self.crc_length}-bit CRC"
            )
        return self


class PolarCodeConfig(BaseModel):
    """
    A constructed (shortened) polar code.

    Indices are 0-based. `info_set` holds the K_info + crc_length positions of u
    that carry message and CRC bits; every other position is frozen to zero.
    Positions ≥ code_block_length are pinned by shortening and always frozen.
    """

    mother_block_length: Annotated[int, Field(ge=2)] = Field(
        ..., description="Mother code length N = 2^n."
    )
    code_block_length: Annotated[int, Field(ge=1)] = Field(
        ..., description="Transmitted length N_target after shortening."
    )
    num_info_bits: Annotated[int, Field(ge=0)] = Field(
        ..., description="Message bits K_info (CRC excluded)."
    )
    crc_length: Annotated[int, Field(ge=0, le=32)] = Field(default=16)
    crc_polynomial: Annotated[int, Field(ge=0)] = Field(default=0x1021)
    list_size: Annotated[int, Field(ge=1)] = Field(default=8)
    info_set: Tuple[int, ...] = Field(..., description="Sorted information positions 𝒜.")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check(self) -> "PolarCodeConfig":
        n = self.mother_block_length
        if n & (n - 1):
            raise ValueError(f"mother block length {n} is not a power of two")
        if not n // 2 < self.code_block_length <= n:
            raise ValueError(
                f"code block length {self.code_block_length} outside ({n // 2}, {n}]"
            )
        if self.num_info_bits + self.crc_length > self.code_block_length:
            raise ValueError("K_info + crc_length exceeds the code block length")
        if len(self.info_set) != self.num_info_bits + self.crc_length:
            raise ValueError("|𝒜| must equal K_info + crc_length")
        if list(self.info_set) != sorted(set(self.info_set)):
            raise ValueError("info_set must be sorted without repeats")
        if self.info_set and (
            self.info_set[0] < 0 or self.info_set[-1] >= self.mother_block_length - self.num_shortened
        ):
            raise ValueError("info_set reaches into shortened or invalid positions")
        return self

    @property
    def frozen_set(self) -> Tuple[int, ...]:
        info = set(self.info_set)
        return tuple(i for i in range(self.mother_block_length) if i not in info)

    @property
    def num_shortened(self) -> int:
        return self.mother_block_length - self.code_block_length

    @property
    def rate(self) -> float:
        return len(self.info_set) / self.code_block_length

    def __str__(self) -> str:
        return (
            f"<PolarCodeConfig N={self.mother_block_length}→{self.code_block_length} "
            f"K={self.num_info_bits}+{self.crc_length} L={self.list_size}>"
        )


class Codeword(BaseModel):
    """Rate-matched polar codeword ν."""

    bits: BitArray = Field(..., description="Length-N_target binary vector.")

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    def __len__(self) -> int:
        return int(self.bits.size)
