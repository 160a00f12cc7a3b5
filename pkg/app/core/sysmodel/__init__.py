from .rates import evaluate_group_rates, sample_rates, split_common_rate
from .signal import (
    PowerCheck,
    SystemModelError,
    check_power,
    received_gains,
    sinr_common,
    sinr_private,
    superpose,
    used_power,
)

__all__ = [
    "PowerCheck",
    "SystemModelError",
    "check_power",
    "evaluate_group_rates",
    "received_gains",
    "sample_rates",
    "sinr_common",
    "sinr_private",
    "split_common_rate",
    "superpose",
    "used_power",
]
