"""Campaign configuration from presets, JSON files and command-line overrides."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from app.core.models.campaign import CampaignConfig
from app.core.models.enums import Strategy

from .presets import get_preset

logger = logging.getLogger(__name__)


def load_config(path: Union[str, Path]) -> CampaignConfig:
    """
    Read a JSON campaign file.

    Raises:
        OSError: If the file cannot be read.
        pydantic.ValidationError: If the document does not describe a valid campaign.
    """
    text = Path(path).read_text(encoding="utf-8")
    config = CampaignConfig.model_validate_json(text)
    logger.debug("loaded %s from %s", config, path)
    return config


def dump_config(config: CampaignConfig, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(config.model_dump_json(indent=2), encoding="utf-8")
    return path


def parse_grid(text: str) -> List[float]:
    """'10,20,30' or 'start:stop:step' (stop inclusive)."""
    text = text.strip()
    if ":" in text:
        parts = [float(x) for x in text.split(":")]
        if len(parts) != 3 or parts[2] <= 0 or parts[1] < parts[0]:
            raise ValueError(f"invalid grid range {text!r}")
        start, stop, step = parts
        count = int(round((stop - start) / step)) + 1
        return [round(start + i * step, 10) for i in range(count)]
    values = [float(x) for x in text.split(",") if x.strip()]
    if not values:
        raise ValueError("empty grid")
    return values


def parse_backoff(text: str) -> Tuple[float, float]:
    """'1.5' applies to both stream classes, '1.0,2.0' is (common, private)."""
    values = [float(x) for x in text.split(",")]
    if len(values) == 1:
        return values[0], values[0]
    if len(values) == 2:
        return values[0], values[1]
    raise ValueError(f"invalid back-off {text!r}")


def strategies_for(choice: str) -> List[Strategy]:
    if choice == "both":
        return [Strategy.RSMA, Strategy.SDMA]
    return [Strategy(choice)]


def resolve_config(scenario: Optional[str], config_path: Optional[str]) -> CampaignConfig:
    """
    A config file wins over a preset name; one of them is required.

    Raises:
        UnknownScenarioError: If the preset name is not registered.
        ValueError: If neither is given.
    """
    if config_path:
        return load_config(config_path)
    if scenario:
        return get_preset(scenario).config
    raise ValueError("give a scenario name or --config")


def apply_overrides(
    config: CampaignConfig,
    strategy: Optional[str] = None,
    grid: Optional[Sequence[float]] = None,
    num_realizations: Optional[int] = None,
    frame_length: Optional[int] = None,
    seed: Optional[int] = None,
    backoff: Optional[Tuple[float, float]] = None,
    calibrate: bool = False,
    precoder_path: Optional[str] = None,
    optimizer_samples: Optional[int] = None,
) -> CampaignConfig:
    """
    Apply command-line values on top of a campaign and validate the result.

    Raises:
        pydantic.ValidationError: If an override breaks a constraint.
    """
    update: Dict[str, Any] = {}
    amc_update: Dict[str, Any] = {}
    optimizer_update: Dict[str, Any] = {}
    if strategy:
        update["strategies"] = strategies_for(strategy)
    if grid:
        update["operating_points"] = list(grid)
    if num_realizations is not None:
        update["num_realizations"] = num_realizations
    if frame_length is not None:
        amc_update["stream_length"] = frame_length
    if seed is not None:
        update["master_seed"] = seed
    if backoff is not None:
        amc_update["backoff_common_db"], amc_update["backoff_private_db"] = backoff
    if calibrate:
        update["calibrate_backoff"] = True
    if precoder_path:
        update["precoder_path"] = precoder_path
    if optimizer_samples is not None:
        optimizer_update["num_sample_channels"] = optimizer_samples
        optimizer_update["evaluation_samples"] = optimizer_samples
    if amc_update:
        update["amc"] = config.amc.model_copy(update=amc_update)
    if optimizer_update:
        update["optimizer"] = config.optimizer.model_copy(update=optimizer_update)
    # model_copy skips validation; round-trip so overrides are checked too.
    return CampaignConfig.model_validate(config.model_copy(update=update).model_dump())
