from __future__ import annotations

import logging
from typing import Dict, List, NamedTuple, Optional, Sequence

import numpy as np

from app.core.channel.estimates import draw_estimate
from app.core.models.campaign import CampaignConfig
from app.core.models.enums import Strategy
from app.core.models.precoder import OptimizationResult
from app.core.seeding import SeedPurpose, derive_seed

from .base import BasePrecoderDesigner
from .sca import SCAPrecoderDesigner

logger = logging.getLogger(__name__)


class ShannonPoint(NamedTuple):
    point: float
    rsma: float
    sdma: float


def design_strategies(
    campaign: CampaignConfig,
    designer: BasePrecoderDesigner,
    point: float,
    estimate: np.ndarray,
    draw: int,
    strategies: Sequence[Strategy],
) -> Dict[str, OptimizationResult]:
    """
    Precoders of each strategy for one estimate at one operating point.

    SDMA runs first when both are requested so RSMA can start from its optimum.
    """
    system = campaign.system.with_power(campaign.constraints_at(point))
    seed = derive_seed(campaign.master_seed, SeedPurpose.OPTIMIZER, draw)
    results: Dict[str, OptimizationResult] = {}
    ordered = sorted({Strategy(s) for s in strategies}, key=lambda s: s != Strategy.SDMA)
    for strategy in ordered:
        warm = results[Strategy.SDMA.value].precoders if Strategy.SDMA.value in results else None
        results[strategy.value] = designer.design(
            estimate, system.with_strategy(strategy), seed, warm_start=warm
        )
    return results


def continue_along_grid(
    campaign: CampaignConfig,
    designer: BasePrecoderDesigner,
    grid: Sequence[float],
    estimates: Sequence[np.ndarray],
    designs: Sequence[Dict[str, OptimizationResult]],
    draw: int,
) -> List[Dict[str, OptimizationResult]]:
    """
    Offer every grid point its neighbours' precoders, rescaled to its power.

    SDMA is swept up the grid and back down; a rescaled design replaces the
    point's own when its average-rate MMF value is higher. RSMA is swept the
    same way after also being offered the point's final SDMA precoders, so its
    value never ends below SDMA's.
    """
    refined = [dict(entry) for entry in designs]
    seed = derive_seed(campaign.master_seed, SeedPurpose.OPTIMIZER, draw)
    systems = [campaign.system.with_power(campaign.constraints_at(point)) for point in grid]

    def offer(index: int, strategy: Strategy, precoders) -> None:
        key = strategy.value
        candidate = designer.rescaled(
            precoders, estimates[index], systems[index].with_strategy(strategy), seed
        )
        if candidate is not None and candidate.rates.mmf_value > refined[index][key].rates.mmf_value:
            logger.debug(
                "%s at %g: rescaled precoders raise MMF %.4f -> %.4f",
                key,
                grid[index],
                refined[index][key].rates.mmf_value,
                candidate.rates.mmf_value,
            )
            refined[index][key] = candidate

    for strategy in (Strategy.SDMA, Strategy.RSMA):
        key = strategy.value
        if not all(key in entry for entry in refined):
            continue
        if strategy == Strategy.RSMA and all(Strategy.SDMA.value in entry for entry in refined):
            for index, entry in enumerate(refined):
                offer(index, strategy, entry[Strategy.SDMA.value].precoders)
        for index in range(1, len(grid)):
            offer(index, strategy, refined[index - 1][key].precoders)
        for index in range(len(grid) - 2, -1, -1):
            offer(index, strategy, refined[index + 1][key].precoders)
    return refined


def shannon_curve(
    campaign: CampaignConfig,
    grid: Optional[Sequence[float]] = None,
    designer: Optional[BasePrecoderDesigner] = None,
) -> List[ShannonPoint]:
    """
    Average-rate MMF value of RSMA and SDMA at every grid point.

    Values are averaged over the campaign's estimate draws.
    """
    grid = list(campaign.operating_points if grid is None else grid)
    if not grid:
        raise ValueError("the grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("the grid must be strictly ascending")
    designer = designer or SCAPrecoderDesigner(campaign.optimizer)

    values = {
        Strategy.RSMA.value: np.zeros((campaign.estimate_draws, len(grid))),
        Strategy.SDMA.value: np.zeros((campaign.estimate_draws, len(grid))),
    }
    for draw in range(campaign.estimate_draws):
        estimates = [draw_estimate(campaign, point, draw).estimate for point in grid]
        designs = [
            design_strategies(
                campaign, designer, point, estimate, draw, [Strategy.RSMA, Strategy.SDMA]
            )
            for point, estimate in zip(grid, estimates)
        ]
        designs = continue_along_grid(campaign, designer, grid, estimates, designs, draw)
        for index, results in enumerate(designs):
            for strategy, result in results.items():
                values[strategy][draw, index] = result.rates.mmf_value

    curve = []
    for index, point in enumerate(grid):
        entry = ShannonPoint(
            point=float(point),
            rsma=float(values[Strategy.RSMA.value][:, index].mean()),
            sdma=float(values[Strategy.SDMA.value][:, index].mean()),
        )
        logger.info("bound at %g: RSMA %.4f, SDMA %.4f bps/Hz", point, entry.rsma, entry.sdma)
        curve.append(entry)
    return curve
