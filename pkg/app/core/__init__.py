from typing import Optional

from app.core.models.precoder import OptimizerConfig
from app.core.precoder import BasePrecoderDesigner, SCAPrecoderDesigner, StoredPrecoderDesigner


def get_designer(
    options: Optional[OptimizerConfig] = None, precoder_path: Optional[str] = None
) -> BasePrecoderDesigner:
    if precoder_path:
        return StoredPrecoderDesigner(precoder_path, options)
    return SCAPrecoderDesigner(options)
