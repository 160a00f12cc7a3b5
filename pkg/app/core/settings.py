"""Process-level settings read from the environment (and an optional .env file)."""

from __future__ import annotations

import os
from functools import lru_cache
from typing import Annotated

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator


class Settings(BaseModel):
    workers: Annotated[int, Field(ge=1)] = Field(
        default=1, description="Worker processes for Monte-Carlo realizations."
    )
    log_level: str = Field(default="INFO", description="Root logger level.")
    output_dir: str = Field(default="results", description="Default artifact directory.")

    model_config = ConfigDict(frozen=True)

    @field_validator("log_level")
    @classmethod
    def _upper(cls, value: str) -> str:
        return value.upper()


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    load_dotenv()
    return Settings(
        workers=os.getenv("RSLINK_WORKERS", "1"),
        log_level=os.getenv("RSLINK_LOG_LEVEL", "INFO"),
        output_dir=os.getenv("RSLINK_OUTPUT_DIR", "results"),
    )
