from .campaign import (
    CampaignError,
    PointDesign,
    RealizationBatch,
    continue_designs,
    design_point,
    execute_batches,
    run_batch,
    run_campaign,
    run_point,
    simulate,
)
from .link import LinkPlan, draw_messages, run_realization
from .metrics import bler_per_user, mmf_throughput, recovered_totals, total_channel_uses
from .results_io import read_results_csv, results_frame, write_results_csv

__all__ = [
    "CampaignError",
    "LinkPlan",
    "PointDesign",
    "RealizationBatch",
    "bler_per_user",
    "continue_designs",
    "design_point",
    "draw_messages",
    "execute_batches",
    "mmf_throughput",
    "read_results_csv",
    "recovered_totals",
    "results_frame",
    "run_batch",
    "run_campaign",
    "run_point",
    "run_realization",
    "simulate",
    "total_channel_uses",
    "write_results_csv",
]
