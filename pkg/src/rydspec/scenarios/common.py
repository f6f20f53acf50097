# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Translations from validated config sections to library objects."""

from __future__ import annotations

from dataclasses import replace

import numpy as np
from numpy.typing import NDArray

from rydspec.angular import HalfInt
from rydspec.schemas.config import (
    BasisConfig,
    CalibrationConfig,
    FieldsConfig,
    GeometryConfig,
    LaserConfig,
    RunConfig,
    SpectrumConfig,
)
from rydspec.scenarios.base import RunContext
from rydspec.sequence import mcp_calibration
from rydspec.spectra import CloudGeometry, detuning_grid
from rydspec.stark import BasisSpec, StarkMap, build_basis, stark_maps
from rydspec.structure import AtomData, mf_spacing_mhz_per_gauss, zeeman_slope

FloatArray = NDArray[np.float64]

GROUND = "5S1/2"
ZEEMAN_GROUND_F = 2


def run_data(config: RunConfig, context: RunContext) -> AtomData:
    return context.data.with_zero_defects() if config.basis.zero_defects else context.data


def basis_spec(cfg: BasisConfig, m: float) -> BasisSpec:
    return BasisSpec(
        center_n=cfg.center_n,
        m=HalfInt.of(m),
        delta_n=cfg.delta_n,
        l_max=cfg.l_max,
        include_hyperfine=cfg.include_hyperfine,
        hyperfine_window_ghz=cfg.hyperfine_window_ghz,
        targets=tuple(cfg.targets),
        intermediate=cfg.intermediate,
        intermediate_f=HalfInt(2 * cfg.intermediate_f),
    )


def field_grid(cfg: FieldsConfig) -> FloatArray:
    if cfg.stop_v_per_cm == cfg.start_v_per_cm:
        return np.array([cfg.start_v_per_cm], dtype=np.float64)
    return detuning_grid(cfg.start_v_per_cm, cfg.stop_v_per_cm, cfg.step_v_per_cm)


def probe_grid(cfg: SpectrumConfig) -> FloatArray:
    return detuning_grid(cfg.start_mhz, cfg.stop_mhz, cfg.step_mhz)


def geometry(cfg: GeometryConfig) -> CloudGeometry:
    return CloudGeometry(**cfg.model_dump())


def zeeman_width(data: AtomData, laser: LaserConfig, geom: GeometryConfig) -> float:
    """Magnetic broadening of the ground level across the cloud, in MHz."""
    if not laser.include_zeeman:
        return 0.0
    spacing = mf_spacing_mhz_per_gauss(data.level(GROUND), data.nuclear_spin, ZEEMAN_GROUND_F)
    return zeeman_slope(spacing, geom.b_gradient_g_per_cm, geom.diameter_um, laser.zeeman_mf_span)


def calibration_factor(cfg: CalibrationConfig | None) -> float:
    """Atoms per signal unit, or 1 when no calibration is configured."""
    if cfg is None:
        return 1.0
    return mcp_calibration(
        cfg.loading_rate_per_s, cfg.lifetime_s, cfg.ionization_rate_per_s, cfg.ion_signal_per_s
    ).atoms_per_signal


def fine_structure_maps(config: RunConfig, context: RunContext) -> list[StarkMap]:
    """One Stark map per configured m_j block on the configured field grid."""
    data = run_data(config, context)
    specs = [
        replace(basis_spec(config.basis, m), include_hyperfine=False)
        for m in config.basis.m_values
    ]
    bases = [build_basis(spec, data) for spec in specs]
    grid = field_grid(config.fields)
    return stark_maps(bases, grid, workers=context.workers, cache=context.cache)
