from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .arrays import BitArray, ComplexArray


class ModulationScheme(BaseModel):
    """
    Square Gray-labelled QAM alphabet with unit average energy.

    Points are built per axis in `app.core.phy.qam`; this model only names the order.
    """

    bits_per_symbol: Literal[2, 4, 6, 8] = Field(
        ..., description="m = log2|ℳ| (4-, 16-, 64- or 256-QAM)."
    )

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={"example": {"bits_per_symbol": 4}},
    )

    @classmethod
    def from_order(cls, order: int) -> "ModulationScheme":
        return cls(bits_per_symbol=int(order).bit_length() - 1)

    @property
    def order(self) -> int:
        return 1 << self.bits_per_symbol

    @property
    def name(self) -> str:
        return f"{self.order}-QAM"

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"ModulationScheme(bits_per_symbol={self.bits_per_symbol})"


class StreamFrame(BaseModel):
    """One stream's frame through the transmitter: ν, ν′ and the S symbols."""

    codeword: BitArray = Field(..., description="Rate-matched codeword ν (N bits).")
    interleaved: BitArray = Field(..., description="Interleaved bits ν′.")
    symbols: ComplexArray = Field(..., description="Modulated symbols s (S,).")
    scheme: ModulationScheme = Field(..., description="Alphabet used.")

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @model_validator(mode="after")
    def _check(self) -> "StreamFrame":
        if self.codeword.size != self.interleaved.size:
            raise ValueError("interleaving must preserve length")
        if self.codeword.size != self.scheme.bits_per_symbol * self.symbols.size:
            raise ValueError("N must equal m·S")
        return self
