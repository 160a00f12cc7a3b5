from __future__ import annotations

from typing import List, Sequence

import numpy as np

from app.core.models.campaign import RealizationRecord


def _require(records: Sequence[RealizationRecord]) -> None:
    if not records:
        raise ValueError("at least one realization is required")


def recovered_totals(records: Sequence[RealizationRecord]) -> np.ndarray:
    """Σ_l D_{s,k}^{(l)} per user."""
    _require(records)
    return np.sum([r.recovered_bits for r in records], axis=0, dtype=np.int64)


def total_channel_uses(records: Sequence[RealizationRecord]) -> int:
    return int(sum(r.channel_uses for r in records))


def mmf_throughput(records: Sequence[RealizationRecord]) -> float:
    """min_k Σ_l D_{s,k}^{(l)} / Σ_l S^{(l)} in bits per channel use."""
    return float(recovered_totals(records).min() / total_channel_uses(records))


def bler_per_user(records: Sequence[RealizationRecord]) -> List[float]:
    """Fraction of realizations in which a user's own message was not recovered intact."""
    _require(records)
    failed = ~np.array([r.block_ok for r in records], dtype=bool)
    return [float(x) for x in failed.mean(axis=0)]
