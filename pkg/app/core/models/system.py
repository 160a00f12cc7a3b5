from __future__ import annotations

from typing import Annotated, List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .enums import PowerConstraintKind, Strategy


class PowerConstraintSet(BaseModel):
    """
    Generalised transmit power constraints.

    Each constraint l reads p_cᴴ D_l p_c + Σ_m p_mᴴ D_l p_m ≤ P_l with a
    diagonal shaping matrix D_l.
    - SUM_POWER: one constraint, D = I, limit P_t.
    - PER_ANTENNA: one constraint per antenna, D_l = e_l e_lᵀ, limit P_l.
    """

    kind: PowerConstraintKind = Field(
        ..., description="Sum-power or per-antenna constraint family."
    )
    num_tx_antennas: Annotated[int, Field(ge=1)] = Field(
        ..., description="Number of transmit antennas N_t."
    )
    limits: List[Annotated[float, Field(ge=0.0)]] = Field(
        ..., description="Power limits P_l (linear), one per constraint."
    )

    model_config = ConfigDict(
        frozen=True,
        use_enum_values=True,
        json_schema_extra={
            "example": {"kind": "sum_power", "num_tx_antennas": 4, "limits": [100.0]}
        },
    )

    @model_validator(mode="after")
    def _check_shape(self) -> "PowerConstraintSet":
        expected = 1 if self.kind == PowerConstraintKind.SUM_POWER else self.num_tx_antennas
        if len(self.limits) != expected:
            raise ValueError(
                f"{self.kind} constraints need {expected} limit(s), got {len(self.limits)}"
            )
        return self

    @classmethod
    def sum_power(cls, num_tx_antennas: int, total_power: float) -> "PowerConstraintSet":
        return cls(
            kind=PowerConstraintKind.SUM_POWER,
            num_tx_antennas=num_tx_antennas,
            limits=[total_power],
        )

    @classmethod
    def per_antenna(cls, limits: List[float]) -> "PowerConstraintSet":
        return cls(
            kind=PowerConstraintKind.PER_ANTENNA,
            num_tx_antennas=len(limits),
            limits=list(limits),
        )

    @property
    def shaping_diagonals(self) -> np.ndarray:
        """Diagonals of D_1..D_L stacked as an L×N_t array."""
        if self.kind == PowerConstraintKind.SUM_POWER:
            return np.ones((1, self.num_tx_antennas))
        return np.eye(self.num_tx_antennas)

    @property
    def shaping_matrices(self) -> np.ndarray:
        return np.array([np.diag(d) for d in self.shaping_diagonals])

    @property
    def total_power(self) -> float:
        return float(sum(self.limits))

    def scaled(self, factor: float) -> "PowerConstraintSet":
        return self.model_copy(update={"limits": [p * factor for p in self.limits]})

    def __str__(self) -> str:
        return f"<PowerConstraintSet {self.kind} L={len(self.limits)} total={self.total_power:.4g}>"


class SystemConfig(BaseModel):
    """
    Multigroup multicast downlink: N_t antennas, K single-antenna users in M groups.

    `group_map[k]` is the 0-based group μ(k) of user k; every group must hold
    at least one user, so the groups partition the user set.
    """

    num_tx_antennas: Annotated[int, Field(ge=1)] = Field(
        ..., description="Transmit antennas N_t."
    )
    num_users: Annotated[int, Field(ge=1)] = Field(..., description="Users K.")
    num_groups: Annotated[int, Field(ge=1)] = Field(..., description="Groups M.")
    group_map: List[Annotated[int, Field(ge=0)]] = Field(
        ..., description="0-based group index of every user (μ)."
    )
    power_constraints: PowerConstraintSet = Field(
        ..., description="Sum-power or per-antenna constraint set."
    )
    csit_alpha: Annotated[float, Field(ge=0.0, le=1.0)] = Field(
        ..., description="CSIT scaling factor α; error variance is P^-α."
    )
    strategy: Strategy = Field(default=Strategy.RSMA, description="RSMA or SDMA.")
    noise_variance: Annotated[float, Field(gt=0.0)] = Field(
        default=1.0, description="Receiver noise variance σ_n²."
    )

    model_config = ConfigDict(
        frozen=True,
        use_enum_values=True,
        json_schema_extra={
            "example": {
                "num_tx_antennas": 4,
                "num_users": 6,
                "num_groups": 3,
                "group_map": [0, 0, 1, 1, 2, 2],
                "power_constraints": {
                    "kind": "sum_power",
                    "num_tx_antennas": 4,
                    "limits": [1000.0],
                },
                "csit_alpha": 0.8,
                "strategy": "rsma",
                "noise_variance": 1.0,
            }
        },
    )

    @model_validator(mode="after")
    def _check_groups(self) -> "SystemConfig":
        if len(self.group_map) != self.num_users:
            raise ValueError(
                f"group_map has {len(self.group_map)} entries for {self.num_users} users"
            )
        used = set(self.group_map)
        if not used <= set(range(self.num_groups)):
            raise ValueError(f"group indices must lie in [0, {self.num_groups})")
        if len(used) != self.num_groups:
            empty = sorted(set(range(self.num_groups)) - used)
            raise ValueError(f"groups {empty} have no users")
        if self.power_constraints.num_tx_antennas != self.num_tx_antennas:
            raise ValueError("power constraints are sized for a different N_t")
        return self

    @property
    def groups(self) -> List[np.ndarray]:
        """User indices of each group 𝒢_m."""
        mapping = np.asarray(self.group_map)
        return [np.flatnonzero(mapping == m) for m in range(self.num_groups)]

    @property
    def is_rsma(self) -> bool:
        return self.strategy == Strategy.RSMA

    def with_strategy(self, strategy: Strategy) -> "SystemConfig":
        return self.model_copy(update={"strategy": strategy})

    def with_power(self, constraints: PowerConstraintSet) -> "SystemConfig":
        return self.model_copy(update={"power_constraints": constraints})

    def __str__(self) -> str:
        return (
            f"<SystemConfig Nt={self.num_tx_antennas} K={self.num_users} "
            f"M={self.num_groups} alpha={self.csit_alpha} {self.strategy}>"
        )
