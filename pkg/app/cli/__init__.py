from .config import apply_overrides, dump_config, load_config, parse_backoff, parse_grid, resolve_config
from .presets import PRESETS, UnknownScenarioError, get_preset, preset_names

__all__ = [
    "PRESETS",
    "UnknownScenarioError",
    "apply_overrides",
    "dump_config",
    "get_preset",
    "load_config",
    "parse_backoff",
    "parse_grid",
    "preset_names",
    "resolve_config",
]
