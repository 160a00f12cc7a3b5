from __future__ import annotations

import logging
from itertools import product
from typing import Callable, List, Sequence, Tuple

from app.core.models.amc import BackoffCalibration, CalibrationPoint

logger = logging.getLogger(__name__)

# (common_db, private_db) -> (MMF throughput, per-user BLER)
BackoffEvaluator = Callable[[float, float], Tuple[float, Sequence[float]]]


def backoff_candidates(grid: Sequence[float], per_class: bool = False) -> List[Tuple[float, float]]:
    """Candidate (common, private) back-off pairs in ascending order of total back-off."""
    values = sorted(set(float(g) for g in grid))
    if not values:
        raise ValueError("back-off grid is empty")
    if not per_class:
        return [(v, v) for v in values]
    return sorted(product(values, values), key=lambda pair: (pair[0] + pair[1], pair))


def calibrate_backoff(
    evaluate: BackoffEvaluator,
    grid: Sequence[float],
    target_bler: float,
    per_class: bool = False,
) -> BackoffCalibration:
    """
    Pick the back-off that maximizes MMF throughput with every user's BLER ≤ target.

    Ties go to the smaller back-off. When no candidate meets the target the
    largest back-off is returned with `violated` set.
    """
    points: List[CalibrationPoint] = []
    for common_db, private_db in backoff_candidates(grid, per_class):
        throughput, bler = evaluate(common_db, private_db)
        point = CalibrationPoint(
            backoff_common_db=common_db,
            backoff_private_db=private_db,
            mmf_throughput=float(throughput),
            bler=[float(b) for b in bler],
        )
        logger.debug(
            "back-off (%.2f, %.2f) dB: T=%.4f max BLER=%.3f",
            common_db,
            private_db,
            point.mmf_throughput,
            point.max_bler,
        )
        points.append(point)

    feasible = [p for p in points if p.max_bler <= target_bler]
    if not feasible:
        worst = points[-1]
        logger.warning(
            "no back-off meets BLER ≤ %g (best max BLER %.3f); using (%.2f, %.2f) dB",
            target_bler,
            min(p.max_bler for p in points),
            worst.backoff_common_db,
            worst.backoff_private_db,
        )
        return BackoffCalibration(
            backoff_common_db=worst.backoff_common_db,
            backoff_private_db=worst.backoff_private_db,
            violated=True,
            points=points,
        )

    best = max(feasible, key=lambda p: p.mmf_throughput)
    return BackoffCalibration(
        backoff_common_db=best.backoff_common_db,
        backoff_private_db=best.backoff_private_db,
        violated=False,
        points=points,
    )
