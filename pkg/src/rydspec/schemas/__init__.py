# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

from rydspec.schemas.config import (
    SUBCOMMANDS,
    AddressingConfig,
    BasisConfig,
    CalibrationConfig,
    DetectionConfig,
    DriveConfig,
    FieldsConfig,
    GeometryConfig,
    HFSelectConfig,
    LaserConfig,
    PopulationConfig,
    RampConfig,
    RunConfig,
    SpectrumConfig,
    load_run_config,
    parse_run_config,
)

__all__ = [
    "SUBCOMMANDS",
    "AddressingConfig",
    "BasisConfig",
    "CalibrationConfig",
    "DetectionConfig",
    "DriveConfig",
    "FieldsConfig",
    "GeometryConfig",
    "HFSelectConfig",
    "LaserConfig",
    "PopulationConfig",
    "RampConfig",
    "RunConfig",
    "SpectrumConfig",
    "load_run_config",
    "parse_run_config",
]
