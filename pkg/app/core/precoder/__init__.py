from .base import BasePrecoderDesigner, PrecoderError
from .rates import average_rates, default_error_variance, sample_channels
from .sca import SCAPrecoderDesigner, optimize_mmf
from .shannon import ShannonPoint, continue_along_grid, design_strategies, shannon_curve
from .storage import PrecoderFileError, load_precoders, store_precoders
from .stored import StoredPrecoderDesigner

__all__ = [
    "BasePrecoderDesigner",
    "PrecoderError",
    "PrecoderFileError",
    "SCAPrecoderDesigner",
    "ShannonPoint",
    "StoredPrecoderDesigner",
    "average_rates",
    "continue_along_grid",
    "default_error_variance",
    "design_strategies",
    "load_precoders",
    "optimize_mmf",
    "sample_channels",
    "shannon_curve",
    "store_precoders",
]
