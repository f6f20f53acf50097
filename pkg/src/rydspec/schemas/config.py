# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Run configuration read from a TOML file.

Units live in field names. Every section forbids unknown keys so a typo in a
config file fails at parse time instead of silently falling back to a default.
"""

from __future__ import annotations

import math
import tomllib
from pathlib import Path
from typing import Literal

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)

from rydspec.errors import ConfigError

SUBCOMMANDS = (
    "starkmap",
    "spectrum",
    "addressing",
    "hfselect",
    "autler",
    "sequence",
    "validate-data",
)


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


def _is_half_odd(value: float) -> bool:
    twice = 2.0 * value
    return twice == round(twice) and int(round(twice)) % 2 != 0


class BasisConfig(_Section):
    center_n: int = Field(41, ge=2, le=200)
    delta_n: int = Field(4, ge=0, le=20)
    l_max: int | None = Field(None, ge=0)
    # m_j for fine-structure blocks.
    m_values: list[float] = Field(default_factory=lambda: [0.5, 1.5, 2.5], min_length=1)
    include_hyperfine: bool = False
    hyperfine_window_ghz: float = Field(2.0, gt=0)
    targets: list[str] = Field(default_factory=lambda: ["41D5/2", "41D3/2"], min_length=1)
    intermediate: str = "5P3/2"
    intermediate_f: int = Field(3, ge=0, le=10)
    zero_defects: bool = False

    @field_validator("m_values")
    @classmethod
    def _half_integer_m(cls, values: list[float]) -> list[float]:
        for m in values:
            if not _is_half_odd(m):
                raise ValueError(f"m_j must be half-integer, got {m}")
        return values


class FieldsConfig(_Section):
    start_v_per_cm: float = Field(0.0, ge=0)
    stop_v_per_cm: float = Field(20.0, ge=0)
    step_v_per_cm: float = Field(0.1, gt=0)

    @model_validator(mode="after")
    def _ordered(self) -> FieldsConfig:
        if self.stop_v_per_cm < self.start_v_per_cm:
            raise ValueError("stop_v_per_cm must not be below start_v_per_cm")
        return self


class GeometryConfig(_Section):
    diameter_um: float = Field(500.0, gt=0)
    b_gradient_g_per_cm: float = Field(16.0, ge=0)
    e_gradient_v_per_cm2: float = 0.0
    beam_offset_um: float = 0.0
    transverse_e_gradient_v_per_cm2: float = 0.0

    @model_validator(mode="after")
    def _finite(self) -> GeometryConfig:
        if not all(math.isfinite(v) for v in self.model_dump().values()):
            raise ValueError("geometry values must be finite")
        return self


class LaserConfig(_Section):
    lorentzian_fwhm_mhz: float = Field(1.0, ge=0)
    gaussian_fwhm_mhz: float = Field(0.0, ge=0)
    include_zeeman: bool = True
    zeeman_mf_span: int = Field(4, ge=0)


class DriveConfig(_Section):
    saturation: float = Field(151.0, ge=0)
    detuning_mhz: float = 0.0
    coupling: float = Field(7.0 / 15.0, gt=0, le=1)
    probe_linewidth_mhz: float = Field(1.0, gt=0)
    extra_gaussian_fwhm_mhz: float = Field(6.0, ge=0)
    sweep_s: list[float] = Field(default_factory=lambda: [2.0, 151.0])
    min_prominence: float = Field(0.05, gt=0, lt=1)

    @field_validator("sweep_s")
    @classmethod
    def _non_negative(cls, values: list[float]) -> list[float]:
        if any(s < 0 for s in values):
            raise ValueError("saturation parameters must be non-negative")
        return values


class HFSelectConfig(_Section):
    pump_fraction: float = Field(1.0, ge=0, le=1)
    lock_f1: int = 1
    lock_f2: int = 3
    equal_dipole_factors: bool = False


class RampConfig(_Section):
    target_v_per_cm: float = Field(300.0, gt=0)
    rise_time_us: float = Field(55.0, gt=0)
    damping: float = Field(0.6, gt=0)
    switch_delay_us: float = Field(0.0, ge=0)
    flight_time_us: float = Field(0.0, ge=0)


class PopulationConfig(_Section):
    label: str
    count: float = Field(ge=0)


class DetectionConfig(_Section):
    pulse_us: float = Field(100.0, gt=0)
    mcp_width_us: float = Field(1.0, ge=0)
    collision_smear_us: float = Field(5.0, ge=0)
    background_count: float = Field(0.0, ge=0)
    prompt_ions: float = Field(0.0, ge=0)
    window_after_ramp_us: float = Field(200.0, gt=0)
    noise_sigma: float = Field(0.0, ge=0)
    populations: list[PopulationConfig] = Field(
        default_factory=lambda: [PopulationConfig(label="41D5/2", count=1000.0)]
    )


class CalibrationConfig(_Section):
    loading_rate_per_s: float = Field(gt=0)
    lifetime_s: float = Field(gt=0)
    ionization_rate_per_s: float = Field(gt=0)
    ion_signal_per_s: float = Field(gt=0)


class SpectrumConfig(_Section):
    start_mhz: float = -100.0
    stop_mhz: float = 100.0
    step_mhz: float = Field(0.1, gt=0)
    shape: Literal["tophat", "gaussian"] = "tophat"
    field_v_per_cm: float = Field(0.0, ge=0)

    @model_validator(mode="after")
    def _ordered(self) -> SpectrumConfig:
        if self.stop_mhz <= self.start_mhz:
            raise ValueError("stop_mhz must exceed start_mhz")
        return self


class AddressingConfig(_Section):
    offsets_um: list[float] = Field(default_factory=lambda: [-500.0, 0.0, 500.0], min_length=1)
    numerator: str = "41D3/2"
    denominator: str = "41D5/2"
    target_ratio: float = Field(98.0 / 75.0, gt=0)
    # Fitted to target_ratio when omitted.
    e0_v_per_cm: float | None = Field(None, ge=0)
    ratio_offset_um: float | None = None


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    subcommand: Literal[
        "starkmap", "spectrum", "addressing", "hfselect", "autler", "sequence", "validate-data"
    ]
    constants_file: Path | None = None
    output_dir: Path = Path("out")
    seed: int | None = None

    basis: BasisConfig = Field(default_factory=BasisConfig)
    fields: FieldsConfig = Field(default_factory=FieldsConfig)
    geometry: GeometryConfig = Field(default_factory=GeometryConfig)
    laser: LaserConfig = Field(default_factory=LaserConfig)
    drive: DriveConfig = Field(default_factory=DriveConfig)
    hfselect: HFSelectConfig = Field(default_factory=HFSelectConfig)
    ramp: RampConfig = Field(default_factory=RampConfig)
    detection: DetectionConfig = Field(default_factory=DetectionConfig)
    calibration: CalibrationConfig | None = None
    spectrum: SpectrumConfig = Field(default_factory=SpectrumConfig)
    addressing: AddressingConfig = Field(default_factory=AddressingConfig)


def parse_run_config(raw: dict[str, object]) -> RunConfig:
    """Validate a decoded mapping, converting pydantic errors to ConfigError."""
    try:
        return RunConfig.model_validate(raw)
    except ValidationError as exc:
        msg = f"invalid run configuration: {exc}"
        raise ConfigError(msg) from exc


def load_run_config(path: Path | str, **overrides: object) -> RunConfig:
    """Read a TOML config; ``overrides`` replace top-level keys (CLI flags)."""
    path = Path(path)
    with path.open("rb") as fh:
        try:
            raw = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            msg = f"{path}: {exc}"
            raise ConfigError(msg) from exc
    raw.update({k: v for k, v in overrides.items() if v is not None})
    return parse_run_config(raw)
