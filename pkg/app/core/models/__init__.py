"""
Link-level simulator domain models

- System: antennas, users, groups and power constraints
- Channel: channel generators, CSIT error model, realizations
- Precoder: precoder sets, rate reports, optimizer settings
- Coding / Phy: polar codes and modulation
- AMC: per-stream modulation and coding
- Campaign: Monte-Carlo campaigns, their results and presets
"""

from .amc import AmcConfig, BackoffCalibration, CalibrationPoint, McsAssignment, StreamMcs
from .campaign import (
    CampaignConfig,
    CampaignResult,
    OperatingPointResult,
    RealizationRecord,
    ScenarioPreset,
)
from .channel import ChannelConfig, ChannelRealization, SatelliteParams
from .coding import Codeword, PolarCodeConfig, PolarSettings
from .enums import (
    ChannelModelKind,
    Initialization,
    OperatingAxis,
    PointStatus,
    PowerConstraintKind,
    Strategy,
    StreamClass,
)
from .phy import ModulationScheme, StreamFrame
from .precoder import (
    AverageRateReport,
    OptimizationResult,
    OptimizerConfig,
    PrecoderSet,
    RateReport,
)
from .system import PowerConstraintSet, SystemConfig

__all__ = [
    "ChannelModelKind",
    "Initialization",
    "OperatingAxis",
    "PointStatus",
    "PowerConstraintKind",
    "Strategy",
    "StreamClass",
    "PowerConstraintSet",
    "SystemConfig",
    "SatelliteParams",
    "ChannelConfig",
    "ChannelRealization",
    "PrecoderSet",
    "RateReport",
    "AverageRateReport",
    "OptimizerConfig",
    "OptimizationResult",
    "PolarSettings",
    "PolarCodeConfig",
    "Codeword",
    "ModulationScheme",
    "StreamFrame",
    "AmcConfig",
    "StreamMcs",
    "McsAssignment",
    "CalibrationPoint",
    "BackoffCalibration",
    "CampaignConfig",
    "RealizationRecord",
    "OperatingPointResult",
    "CampaignResult",
    "ScenarioPreset",
]
