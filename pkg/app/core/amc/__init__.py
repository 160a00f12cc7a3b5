from .calibration import BackoffEvaluator, backoff_candidates, calibrate_backoff
from .selection import (
    CodeParams,
    apply_backoff,
    assign_mcs,
    code_params,
    select_modulation,
    split_common_payload,
    stream_mcs,
)

__all__ = [
    "BackoffEvaluator",
    "CodeParams",
    "apply_backoff",
    "assign_mcs",
    "backoff_candidates",
    "calibrate_backoff",
    "code_params",
    "select_modulation",
    "split_common_payload",
    "stream_mcs",
]
