from __future__ import annotations

from typing import Annotated, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .arrays import ComplexArray, RealArray
from .enums import Initialization, Strategy


class PrecoderSet(BaseModel):
    """
    Precoders P = [p_c, p_1, …, p_M] and the common-rate split C_1..C_M.

    SDMA sets carry p_c = 0 and C_m = 0.
    """

    common: ComplexArray = Field(..., description="Common precoder p_c (N_t,).")
    private: ComplexArray = Field(..., description="Private precoders as columns (N_t × M).")
    common_rate_split: RealArray = Field(
        ..., description="Portion C_m of the common rate allocated to group m (bps/Hz)."
    )
    strategy: Strategy = Field(default=Strategy.RSMA, description="RSMA or SDMA.")

    model_config = ConfigDict(
        arbitrary_types_allowed=True,
        frozen=True,
        use_enum_values=True,
    )

    @model_validator(mode="after")
    def _check_shapes(self) -> "PrecoderSet":
        if self.common.ndim != 1 or self.private.ndim != 2:
            raise ValueError("p_c must be a vector and the privates an N_t × M matrix")
        if self.private.shape[0] != self.common.shape[0]:
            raise ValueError("common and private precoders differ in N_t")
        if self.common_rate_split.shape != (self.private.shape[1],):
            raise ValueError("common_rate_split needs one entry per group")
        if np.any(self.common_rate_split < 0):
            raise ValueError("common_rate_split entries must be nonnegative")
        if self.strategy == Strategy.SDMA and (
            np.any(self.common != 0) or np.any(self.common_rate_split != 0)
        ):
            raise ValueError("SDMA precoders must have p_c = 0 and C_m = 0")
        return self

    @classmethod
    def zeros(
        cls, num_tx_antennas: int, num_groups: int, strategy: Strategy = Strategy.RSMA
    ) -> "PrecoderSet":
        return cls(
            common=np.zeros(num_tx_antennas, dtype=np.complex128),
            private=np.zeros((num_tx_antennas, num_groups), dtype=np.complex128),
            common_rate_split=np.zeros(num_groups),
            strategy=strategy,
        )

    @property
    def num_tx_antennas(self) -> int:
        return self.common.shape[0]

    @property
    def num_groups(self) -> int:
        return self.private.shape[1]

    @property
    def matrix(self) -> np.ndarray:
        """[p_c, p_1, …, p_M] as an N_t × (M+1) matrix."""
        return np.column_stack([self.common, self.private])

    def with_split(self, split: np.ndarray) -> "PrecoderSet":
        return PrecoderSet(
            common=self.common,
            private=self.private,
            common_rate_split=np.asarray(split, dtype=np.float64),
            strategy=self.strategy,
        )

    def scaled(self, factor: float) -> "PrecoderSet":
        return PrecoderSet(
            common=self.common * factor,
            private=self.private * factor,
            common_rate_split=self.common_rate_split,
            strategy=self.strategy,
        )

    def __str__(self) -> str:
        return (
            f"<PrecoderSet {self.strategy} Nt={self.num_tx_antennas} M={self.num_groups} "
            f"ΣC={float(self.common_rate_split.sum()):.4f}>"
        )


class RateReport(BaseModel):
    """Instantaneous rates of one channel realization (bps/Hz)."""

    common_rates_per_user: RealArray = Field(..., description="R_{c,k}, one per user.")
    common_rate: float = Field(..., description="R_c = min_k R_{c,k}.")
    private_rates_per_user: RealArray = Field(..., description="R_k, one per user.")
    group_private_rates: RealArray = Field(..., description="r_m = min over 𝒢_m of R_k.")
    group_rates: RealArray = Field(..., description="r_{g,m} = C_m + r_m.")
    split_feasible: bool = Field(
        default=True, description="False when Σ_m C_m exceeds R_c."
    )

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @property
    def mmf_value(self) -> float:
        return float(self.group_rates.min())

    def __str__(self) -> str:
        return f"<RateReport Rc={self.common_rate:.4f} mmf={self.mmf_value:.4f} feasible={self.split_feasible}>"


class AverageRateReport(BaseModel):
    """
    Average rates over the CSIT-error distribution, the link-quality metric of AMC.

    `common_rate_split` is the split actually applied: the stored split, rescaled
    down when it exceeds R̄_c.
    """

    common_rate: Annotated[float, Field(ge=0.0)] = Field(..., description="R̄_c.")
    private_rates: RealArray = Field(..., description="r̄_1..r̄_M.")
    common_rate_split: RealArray = Field(..., description="Effective C_1..C_M.")
    mmf_value: Annotated[float, Field(ge=0.0)] = Field(
        ..., description="min_m (C_m + r̄_m)."
    )
    num_samples: Annotated[int, Field(ge=1)] = Field(..., description="Channel draws averaged.")
    split_rescaled: bool = Field(
        default=False, description="True when the stored split exceeded R̄_c."
    )

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @model_validator(mode="after")
    def _check(self) -> "AverageRateReport":
        if np.any(self.private_rates < 0) or np.any(self.common_rate_split < 0):
            raise ValueError("average rates must be nonnegative")
        return self

    @property
    def group_rates(self) -> np.ndarray:
        return self.common_rate_split + self.private_rates

    def __str__(self) -> str:
        return f"<AverageRateReport Rc={self.common_rate:.4f} mmf={self.mmf_value:.4f} n={self.num_samples}>"


class OptimizerConfig(BaseModel):
    """Sample-average + successive-convex-approximation optimizer settings."""

    num_sample_channels: Annotated[int, Field(ge=1)] = Field(
        default=1000, description="CSIT-error draws in the sample average."
    )
    max_iterations: Annotated[int, Field(ge=1)] = Field(
        default=200, description="Upper bound on SCA iterations."
    )
    convergence_epsilon: Annotated[float, Field(gt=0.0)] = Field(
        default=1e-4, description="Stop once the objective improves by less (bps/Hz)."
    )
    strategy: Strategy = Field(default=Strategy.RSMA, description="RSMA or SDMA.")
    initialization: Initialization = Field(
        default=Initialization.MRT_SVD, description="SCA starting point."
    )
    evaluation_samples: Annotated[int, Field(ge=1)] = Field(
        default=1000, description="Draws used by average_rates on the final precoders."
    )
    solver: str = Field(default="CLARABEL", description="cvxpy conic solver name.")
    fallback_solver: Optional[str] = Field(
        default="SCS", description="Tried when the primary solver fails on a subproblem."
    )
    sdma_warm_start: bool = Field(
        default=True, description="Also start RSMA from the SDMA optimum and keep the better."
    )
    leakage_start: bool = Field(
        default=True,
        description="Also start from signal-to-leakage-and-noise precoders and keep the better.",
    )
    grid_continuation: bool = Field(
        default=True,
        description="Offer each grid point its neighbours' precoders rescaled to its power.",
    )

    model_config = ConfigDict(
        frozen=True,
        use_enum_values=True,
        json_schema_extra={
            "example": {
                "num_sample_channels": 1000,
                "max_iterations": 200,
                "convergence_epsilon": 1e-4,
                "strategy": "rsma",
                "initialization": "mrt_svd",
            }
        },
    )

    def __str__(self) -> str:
        return f"<OptimizerConfig {self.strategy} samples={self.num_sample_channels} iters≤{self.max_iterations}>"


class OptimizationResult(BaseModel):
    """Optimizer output with its convergence record."""

    precoders: PrecoderSet = Field(..., description="Best feasible precoders found.")
    rates: AverageRateReport = Field(..., description="average_rates on the returned precoders.")
    objective_trace: List[float] = Field(
        default_factory=list,
        description="Sample-average MMF value of the start and of every SCA iterate.",
    )
    converged: bool = Field(default=True, description="False when max_iterations was hit.")
    solver_status: Optional[str] = Field(default=None, description="Last solver status.")

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    def __str__(self) -> str:
        return f"<OptimizationResult mmf={self.rates.mmf_value:.4f} iters={len(self.objective_trace)} converged={self.converged}>"
