"""Static SVG plots of campaign results."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Sequence, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from app.core.models.campaign import CampaignResult  # noqa: E402
from app.core.models.enums import OperatingAxis, PointStatus, Strategy  # noqa: E402
from app.core.precoder.shannon import ShannonPoint  # noqa: E402

logger = logging.getLogger(__name__)

AXIS_LABELS = {
    OperatingAxis.SNR_DB.value: "SNR (dB)",
    OperatingAxis.POWER_DBW.value: "Per-antenna power (dBW)",
}
STYLES = {
    Strategy.RSMA.value: {"color": "tab:red", "marker": "o"},
    Strategy.SDMA.value: {"color": "tab:blue", "marker": "s"},
}

# Reproducible SVG bytes for identical inputs.
plt.rcParams["svg.hashsalt"] = "rslink"


def _save(fig, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", bbox_inches="tight", metadata={"Date": None})
    plt.close(fig)
    logger.info("wrote %s", path)
    return path


def plot_campaign(result: CampaignResult, path: Union[str, Path]) -> Path:
    """Throughput (solid) and Shannon bound (dashed) of each strategy against the operating axis."""
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    for strategy in (Strategy.RSMA, Strategy.SDMA):
        points = [
            p for p in result.for_strategy(strategy) if p.status == PointStatus.OK.value
        ]
        if not points:
            continue
        style = STYLES[strategy.value]
        x = [p.operating_point for p in points]
        name = strategy.value.upper()
        ax.plot(x, [p.mmf_throughput for p in points], linestyle="-", label=f"{name} throughput", **style)
        ax.plot(
            x,
            [p.shannon_bound for p in points],
            linestyle="--",
            markerfacecolor="none",
            label=f"{name} Shannon bound",
            **style,
        )
    ax.set_xlabel(AXIS_LABELS[OperatingAxis(result.operating_axis).value])
    ax.set_ylabel("MMF throughput (bps/Hz)")
    ax.set_title(result.scenario_id)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="upper left", fontsize="small")
    return _save(fig, path)


def plot_bounds(
    curve: Sequence[ShannonPoint], axis: OperatingAxis, title: str, path: Union[str, Path]
) -> Path:
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    x = [c.point for c in curve]
    ax.plot(x, [c.rsma for c in curve], linestyle="--", label="RSMA", **STYLES[Strategy.RSMA.value])
    ax.plot(x, [c.sdma for c in curve], linestyle="--", label="SDMA", **STYLES[Strategy.SDMA.value])
    ax.set_xlabel(AXIS_LABELS[OperatingAxis(axis).value])
    ax.set_ylabel("MMF rate (bps/Hz)")
    ax.set_title(f"{title} Shannon bounds")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="upper left", fontsize="small")
    return _save(fig, path)
