"""
Monte-Carlo campaigns.

For every operating point the precoders of each strategy are designed once per
estimate draw, then offered the precoders of neighbouring points rescaled to
their power. Their average rates pick the MCS (after back-off, optionally
calibrated), and L_mc realizations over the true channel are decoded. Realization
seeds depend on the realization index only, so strategies and operating points
share channels, messages and noise.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from app.core import get_designer
from app.core.amc import assign_mcs, calibrate_backoff
from app.core.channel.estimates import draw_estimate, draw_true_channel
from app.core.models.amc import AmcConfig, BackoffCalibration, McsAssignment
from app.core.models.campaign import (
    CampaignConfig,
    CampaignResult,
    OperatingPointResult,
    RealizationRecord,
)
from app.core.models.enums import PointStatus, Strategy
from app.core.models.precoder import OptimizationResult, PrecoderSet
from app.core.precoder import (
    BasePrecoderDesigner,
    PrecoderError,
    PrecoderFileError,
    continue_along_grid,
    design_strategies,
)
from app.core.settings import get_settings

from .link import LinkPlan, run_realization
from .metrics import bler_per_user, mmf_throughput, recovered_totals, total_channel_uses

logger = logging.getLogger(__name__)


class CampaignError(Exception):
    """Raised when a campaign cannot be set up from its configuration."""

    pass


class PointDesign(NamedTuple):
    draw: int
    estimate: np.ndarray
    result: OptimizationResult


class RealizationBatch(NamedTuple):
    """Picklable unit of work for one worker process."""

    campaign: CampaignConfig
    point: float
    estimate: np.ndarray
    precoders: PrecoderSet
    mcs: McsAssignment
    master: int
    indices: Tuple[int, ...]


class SimulationOutcome(NamedTuple):
    records: List[RealizationRecord]
    assignments: List[Tuple[McsAssignment, int]]  # (MCS, realizations it served)


def run_batch(batch: RealizationBatch) -> List[RealizationRecord]:
    campaign = batch.campaign
    plan = LinkPlan(
        batch.precoders,
        batch.mcs,
        campaign.polar,
        campaign.system.group_map,
        campaign.system.noise_variance,
        campaign.max_log_llr,
    )
    records = []
    for index in batch.indices:
        truth = draw_true_channel(campaign, batch.point, batch.estimate, index, batch.master)
        records.append(run_realization(index, truth.true_channel, plan, batch.master))
    return records


def execute_batches(batches: Sequence[RealizationBatch], workers: int) -> List[RealizationRecord]:
    """Run batches, in worker processes when workers > 1; records come back in index order."""
    if workers > 1 and len(batches) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(run_batch, batches))
    else:
        chunks = [run_batch(batch) for batch in batches]
    return sorted((r for chunk in chunks for r in chunk), key=lambda r: r.index)


def design_point(
    campaign: CampaignConfig, designer: BasePrecoderDesigner, point: float
) -> Dict[str, List[PointDesign]]:
    """Precoders of every strategy for each estimate draw at one operating point."""
    designs: Dict[str, List[PointDesign]] = {Strategy(s).value: [] for s in campaign.strategies}
    for draw in range(campaign.estimates_per_point):
        estimate = draw_estimate(campaign, point, draw).estimate
        results = design_strategies(campaign, designer, point, estimate, draw, campaign.strategies)
        for strategy, result in results.items():
            designs[strategy].append(PointDesign(draw, estimate, result))
    return designs


def continue_designs(
    campaign: CampaignConfig,
    designer: BasePrecoderDesigner,
    designed: Dict[int, Dict[str, List[PointDesign]]],
) -> Dict[int, Dict[str, List[PointDesign]]]:
    """Per estimate draw, let the designed points take over their neighbours' precoders."""
    indices = sorted(designed)
    if not indices:
        return designed
    grid = [campaign.operating_points[i] for i in indices]
    refined = {i: {key: list(draws) for key, draws in designed[i].items()} for i in indices}
    for draw in range(campaign.estimates_per_point):
        estimates = [next(iter(designed[i].values()))[draw].estimate for i in indices]
        column = [{key: draws[draw].result for key, draws in designed[i].items()} for i in indices]
        column = continue_along_grid(campaign, designer, grid, estimates, column, draw)
        for i, results in zip(indices, column):
            for key, result in results.items():
                refined[i][key][draw] = refined[i][key][draw]._replace(result=result)
    return refined


def simulate(
    campaign: CampaignConfig,
    point: float,
    designs: Sequence[PointDesign],
    amc: AmcConfig,
    num_realizations: int,
    master: int,
    workers: int = 1,
) -> SimulationOutcome:
    """
    Run realizations 0..num_realizations−1 with the given back-off.

    Realizations are shared out over the estimate draws in contiguous blocks;
    each block uses the precoders and MCS of its draw.
    """
    blocks = np.array_split(np.arange(num_realizations), len(designs))
    batches: List[RealizationBatch] = []
    assignments: List[Tuple[McsAssignment, int]] = []
    for design, block in zip(designs, blocks):
        if block.size == 0:
            continue
        mcs = assign_mcs(design.result.rates, amc, campaign.polar.crc_length)
        assignments.append((mcs, int(block.size)))
        for chunk in np.array_split(block, min(workers, block.size)):
            batches.append(
                RealizationBatch(
                    campaign=campaign,
                    point=point,
                    estimate=design.estimate,
                    precoders=design.result.precoders,
                    mcs=mcs,
                    master=master,
                    indices=tuple(int(i) for i in chunk),
                )
            )
    return SimulationOutcome(execute_batches(batches, workers), assignments)


def assigned_rate(assignments: Sequence[Tuple[McsAssignment, int]], group_map: Sequence[int]) -> float:
    """min_k of the information bits assigned to user k per channel use, over all realizations."""
    bits = np.zeros(len(group_map))
    uses = 0
    for mcs, count in assignments:
        bits += count * np.array([mcs.group_payload(g) for g in group_map], dtype=np.float64)
        uses += count * mcs.stream_length
    return float(bits.min() / uses)


def mcs_summary(assignments: Sequence[Tuple[McsAssignment, int]]) -> str:
    summary = assignments[0][0].summary
    if len(assignments) > 1:
        summary += f" (+{len(assignments) - 1} draws)"
    return summary


def _calibrate(
    campaign: CampaignConfig,
    point: float,
    designs: Sequence[PointDesign],
    workers: int,
) -> Tuple[BackoffCalibration, Optional[SimulationOutcome]]:
    """
    Back-off search on the campaign's first calibration_realizations realizations.

    Also returns the outcome at the chosen back-off when it covers all
    num_realizations, so the caller can reuse it as the point's result.
    """
    outcomes: Dict[Tuple[float, float], SimulationOutcome] = {}

    def evaluate(common_db: float, private_db: float):
        outcome = simulate(
            campaign,
            point,
            designs,
            campaign.amc.with_backoff(common_db, private_db),
            campaign.calibration_realizations,
            campaign.master_seed,
            workers,
        )
        outcomes[(common_db, private_db)] = outcome
        return mmf_throughput(outcome.records), bler_per_user(outcome.records)

    calibration = calibrate_backoff(
        evaluate, campaign.backoff_grid, campaign.target_bler, campaign.per_class_backoff
    )
    if campaign.calibration_realizations != campaign.num_realizations:
        return calibration, None
    return calibration, outcomes[(calibration.backoff_common_db, calibration.backoff_private_db)]


def run_point(
    campaign: CampaignConfig,
    point: float,
    strategy: Strategy,
    designs: Sequence[PointDesign],
    workers: int = 1,
) -> OperatingPointResult:
    """Back-off, MCS and the L_mc realizations of one strategy at one operating point."""
    amc = campaign.amc
    violated = False
    outcome = None
    if campaign.calibrate_backoff:
        calibration, outcome = _calibrate(campaign, point, designs, workers)
        amc = amc.with_backoff(calibration.backoff_common_db, calibration.backoff_private_db)
        violated = calibration.violated

    if outcome is None:
        outcome = simulate(
            campaign, point, designs, amc, campaign.num_realizations, campaign.master_seed, workers
        )
    result = OperatingPointResult(
        strategy=strategy,
        operating_point=point,
        status=PointStatus.OK,
        recovered_bits=[int(x) for x in recovered_totals(outcome.records)],
        total_channel_uses=total_channel_uses(outcome.records),
        bler=bler_per_user(outcome.records),
        mmf_throughput=mmf_throughput(outcome.records),
        shannon_bound=float(np.mean([d.result.rates.mmf_value for d in designs])),
        assigned_rate=assigned_rate(outcome.assignments, campaign.system.group_map),
        mcs_summary=mcs_summary(outcome.assignments),
        backoff_common_db=amc.backoff_common_db,
        backoff_private_db=amc.backoff_private_db,
        calibration_violated=violated,
        optimizer_converged=all(d.result.converged for d in designs),
        seed=campaign.master_seed,
    )
    logger.info(
        "%s @ %g: throughput %.4f (bound %.4f, assigned %.4f) bps/Hz, max BLER %.3f, %s",
        Strategy(strategy).value,
        point,
        result.mmf_throughput,
        result.shannon_bound,
        result.assigned_rate,
        result.max_bler,
        result.mcs_summary,
    )
    return result


def invalid_point(
    campaign: CampaignConfig, point: float, strategy: Strategy, reason: str
) -> OperatingPointResult:
    return OperatingPointResult(
        strategy=strategy,
        operating_point=point,
        status=PointStatus.INVALID,
        bler=[1.0] * campaign.system.num_users,
        recovered_bits=[0] * campaign.system.num_users,
        seed=campaign.master_seed,
        message=reason,
    )


def run_campaign(
    campaign: CampaignConfig,
    designer: Optional[BasePrecoderDesigner] = None,
    workers: Optional[int] = None,
) -> CampaignResult:
    """
    Simulate every strategy at every operating point.

    Points whose precoders cannot be designed are kept as invalid rows.

    Raises:
        CampaignError: If there are more estimate draws than realizations to share out.
        PrecoderFileError: If stored precoders cannot be read.
    """
    if campaign.estimates_per_point > campaign.num_realizations:
        raise CampaignError(
            f"{campaign.estimates_per_point} estimate draws for {campaign.num_realizations} realizations"
        )
    designer = designer or get_designer(campaign.optimizer, campaign.precoder_path)
    workers = workers or get_settings().workers
    strategies = [Strategy(s) for s in campaign.strategies]
    logger.info(
        "campaign %s: %d points × %s, %d realizations, %d worker(s)",
        campaign.scenario_id,
        len(campaign.operating_points),
        "/".join(s.value for s in strategies),
        campaign.num_realizations,
        workers,
    )

    designed: Dict[int, Dict[str, List[PointDesign]]] = {}
    rows: Dict[str, Dict[int, OperatingPointResult]] = {s.value: {} for s in strategies}
    for point_index, point in enumerate(campaign.operating_points):
        try:
            designed[point_index] = design_point(campaign, designer, point)
        except PrecoderFileError:
            raise
        except PrecoderError as error:
            logger.warning("point %g marked invalid: %s", point, error)
            for strategy in strategies:
                rows[strategy.value][point_index] = invalid_point(campaign, point, strategy, str(error))

    designed = continue_designs(campaign, designer, designed)
    for point_index, designs in designed.items():
        point = campaign.operating_points[point_index]
        for strategy in strategies:
            rows[strategy.value][point_index] = run_point(
                campaign, point, strategy, designs[strategy.value], workers
            )

    return CampaignResult(
        scenario_id=campaign.scenario_id,
        operating_axis=campaign.operating_axis,
        num_users=campaign.system.num_users,
        points=[rows[s.value][i] for s in strategies for i in sorted(rows[s.value])],
    )
