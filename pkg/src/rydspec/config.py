# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

DEFAULT_CONSTANTS_FILE = Path(__file__).parent / "data" / "rb87.constants"


class Settings(BaseSettings):
    """Process-wide settings loaded from ``RYDSPEC_*`` environment variables."""

    constants_file: Path = DEFAULT_CONSTANTS_FILE
    log_level: str = Field("info", pattern="^(debug|info|warning|error)$")
    log_format: str = Field("console", pattern="^(console|json)$")

    # Dense Stark blocks above this size are refused.
    max_basis_size: int = Field(6000, gt=0)
    workers: int = Field(1, ge=1)
    radial_points: int = Field(5000, ge=500)
    # Largest 2j accepted by the angular-momentum routines.
    max_twice_j: int = Field(200, ge=2, le=2000)

    model_config = SettingsConfigDict(env_prefix="RYDSPEC_", env_file=".env", extra="ignore")

    @model_validator(mode="after")
    def _validate_constants_file(self) -> Settings:
        if self.constants_file.suffix != ".constants":
            raise ValueError("constants_file must point to a .constants data file")
        return self


@lru_cache
def get_settings() -> Settings:
    """Simulator settings read from the RYDSPEC_* environment once per process.

    Call ``get_settings.cache_clear()`` after changing the environment.
    """
    return Settings()
