"""Campaign results as CSV, one row per (strategy, operating point)."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Union

import pandas as pd

from app.core.models.campaign import CampaignResult, OperatingPointResult
from app.core.models.enums import OperatingAxis

logger = logging.getLogger(__name__)

_TEXT_COLUMNS = {"scenario_id": str, "strategy": str, "status": str, "mcs_summary": str, "message": str}


def _bler_columns(num_users: int) -> List[str]:
    return [f"bler_user_{k + 1}" for k in range(num_users)]


def _bits_columns(num_users: int) -> List[str]:
    return [f"recovered_bits_user_{k + 1}" for k in range(num_users)]


def results_frame(result: CampaignResult) -> pd.DataFrame:
    axis = OperatingAxis(result.operating_axis).value
    rows = []
    for p in result.points:
        row = {
            "scenario_id": result.scenario_id,
            "strategy": p.strategy,
            axis: p.operating_point,
            "status": p.status,
            "mmf_throughput": p.mmf_throughput,
            "shannon_bound": p.shannon_bound,
            "assigned_rate": p.assigned_rate,
        }
        bler = p.bler or [0.0] * result.num_users
        bits = p.recovered_bits or [0] * result.num_users
        row.update(zip(_bler_columns(result.num_users), bler))
        row.update(zip(_bits_columns(result.num_users), bits))
        row.update(
            {
                "total_channel_uses": p.total_channel_uses,
                "mcs_summary": p.mcs_summary,
                "backoff_common_db": p.backoff_common_db,
                "backoff_private_db": p.backoff_private_db,
                "calibration_violated": p.calibration_violated,
                "optimizer_converged": p.optimizer_converged,
                "seed": p.seed,
                "message": p.message or "",
            }
        )
        rows.append(row)
    return pd.DataFrame(rows)


def write_results_csv(result: CampaignResult, path: Union[str, Path]) -> Path:
    """Write at full float precision; identical results give identical bytes."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    results_frame(result).to_csv(path, index=False, lineterminator="\n")
    logger.info("wrote %d rows to %s", len(result.points), path)
    return path


def read_results_csv(path: Union[str, Path]) -> CampaignResult:
    """
    Parse a results file back into a CampaignResult.

    Raises:
        ValueError: If the file has no operating-point column or no rows.
    """
    frame = pd.read_csv(
        path, float_precision="round_trip", keep_default_na=False, dtype=_TEXT_COLUMNS
    )
    if frame.empty:
        raise ValueError(f"{path} holds no results")
    axes = [a.value for a in OperatingAxis if a.value in frame.columns]
    if not axes:
        raise ValueError(f"{path} has neither an snr_db nor a power_dbw column")
    axis = axes[0]
    num_users = sum(1 for c in frame.columns if c.startswith("bler_user_"))
    blers, bits = _bler_columns(num_users), _bits_columns(num_users)

    points = [
        OperatingPointResult(
            strategy=row["strategy"],
            operating_point=float(row[axis]),
            status=row["status"],
            recovered_bits=[int(row[c]) for c in bits],
            total_channel_uses=int(row["total_channel_uses"]),
            bler=[float(row[c]) for c in blers],
            mmf_throughput=float(row["mmf_throughput"]),
            shannon_bound=float(row["shannon_bound"]),
            assigned_rate=float(row["assigned_rate"]),
            mcs_summary=row["mcs_summary"],
            backoff_common_db=float(row["backoff_common_db"]),
            backoff_private_db=float(row["backoff_private_db"]),
            calibration_violated=_as_bool(row["calibration_violated"]),
            optimizer_converged=_as_bool(row["optimizer_converged"]),
            seed=int(row["seed"]),
            message=row["message"] or None,
        )
        for _, row in frame.iterrows()
    ]
    return CampaignResult(
        scenario_id=str(frame["scenario_id"].iloc[0]),
        operating_axis=axis,
        num_users=num_users,
        points=points,
    )


def _as_bool(value) -> bool:
    if isinstance(value, str):
        return value.strip().lower() == "true"
    return bool(value)
