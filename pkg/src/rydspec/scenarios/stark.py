# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Scenarios built on Stark maps: raw maps, spectra at a bias field, addressing."""

from __future__ import annotations

from typing import Any

import numpy as np
import structlog

from rydspec.angular import HalfInt
from rydspec.schemas.config import RunConfig
from rydspec.scenarios.base import RunContext, Scenario
from rydspec.scenarios.common import (
    basis_spec,
    calibration_factor,
    field_grid,
    fine_structure_maps,
    geometry,
    probe_grid,
    run_data,
    zeeman_width,
)
from rydspec.services.artifacts import block_tag, write_hyperfine_csv, write_starkmap_csv
from rydspec.spectra import (
    LineCurve,
    combine_widths,
    fit_operating_field,
    gradient_addressing_scan,
    stark_lines_at,
    synthesize_spectrum,
)
from rydspec.stark import count_components, hyperfine_stark_lines
from rydspec.structure import level_energy, parse_label, rydberg_level

logger = structlog.get_logger(__name__)


class StarkMapScenario(Scenario):
    @property
    def name(self) -> str:
        return "starkmap"

    @property
    def description(self) -> str:
        return "Stark map per m block (or hyperfine-resolved target lines)"

    def run(self, config: RunConfig, context: RunContext) -> dict[str, Any]:
        if config.basis.include_hyperfine:
            return self._hyperfine(config, context)

        maps = fine_structure_maps(config, context)
        blocks = []
        for m, smap in zip(config.basis.m_values, maps, strict=True):
            tag = block_tag(HalfInt.of(m))
            context.record(write_starkmap_csv(context.output_dir / f"starkmap_{tag}.csv", smap))
            blocks.append(
                {
                    "m_j": m,
                    "file": f"starkmap_{tag}.csv",
                    "basis_size": smap.basis.size,
                    "tracks": smap.tracks,
                    "diabatic_points": int(np.count_nonzero(smap.diabatic)),
                }
            )
        return {
            "reference_energy_GHz": maps[0].reference_energy,
            "field_points": int(maps[0].fields.shape[0]),
            "blocks": blocks,
        }

    def _hyperfine(self, config: RunConfig, context: RunContext) -> dict[str, Any]:
        data = run_data(config, context)
        spec = basis_spec(config.basis, config.basis.m_values[0])
        sets = hyperfine_stark_lines(
            spec, data, field_grid(config.fields), cache=context.cache
        )
        n, l, j = parse_label(config.basis.targets[0])
        assert n is not None
        reference = level_energy(rydberg_level(data, n, l, j), data)
        context.record(
            write_hyperfine_csv(context.output_dir / "starkmap_hyperfine.csv", sets, reference)
        )
        components = {
            label: [len(count_components(line_set, label)) for line_set in sets]
            for label in config.basis.targets
        }
        return {
            "reference_energy_GHz": reference,
            "field_points": len(sets),
            "components": components,
        }


class SpectrumScenario(Scenario):
    @property
    def name(self) -> str:
        return "spectrum"

    @property
    def description(self) -> str:
        return "Broadened two-photon spectrum of the target lines at one bias field"

    def run(self, config: RunConfig, context: RunContext) -> dict[str, Any]:
        data = run_data(config, context)
        maps = fine_structure_maps(config, context)
        geom = geometry(config.geometry)
        zeeman = zeeman_width(data, config.laser, config.geometry)
        lines = stark_lines_at(
            maps,
            config.basis.targets,
            config.spectrum.field_v_per_cm,
            geom,
            lorentzian_fwhm=config.laser.lorentzian_fwhm_mhz,
            gaussian_fwhm=combine_widths(config.laser.gaussian_fwhm_mhz, zeeman),
        )
        factor = calibration_factor(config.calibration)
        spectrum = synthesize_spectrum(
            lines, probe_grid(config.spectrum), config.spectrum.shape
        ).scaled(factor)
        context.write_csv(
            "spectrum.csv",
            ("detuning_MHz", "intensity"),
            zip(spectrum.detuning.tolist(), spectrum.intensity.tolist(), strict=True),
        )
        return {
            "field_V_per_cm": config.spectrum.field_v_per_cm,
            "zeeman_width_MHz": zeeman,
            "calibration_atoms_per_signal": factor,
            "lines": [
                {
                    "id": line.line_id,
                    "center_MHz": line.center,
                    "strength": line.strength,
                    "gaussian_fwhm_MHz": line.gaussian_fwhm,
                    "lorentzian_fwhm_MHz": line.lorentzian_fwhm,
                    "tophat_width_MHz": line.tophat_width,
                }
                for line in lines
            ],
            "peaks_MHz": spectrum.peak_positions().tolist(),
        }


class AddressingScenario(Scenario):
    @property
    def name(self) -> str:
        return "addressing"

    @property
    def description(self) -> str:
        return "Line shifts and widths across the cloud in a field gradient"

    def run(self, config: RunConfig, context: RunContext) -> dict[str, Any]:
        data = run_data(config, context)
        cfg = config.addressing
        maps = fine_structure_maps(config, context)
        geom = geometry(config.geometry)
        numerator = LineCurve.from_maps(maps, cfg.numerator)
        denominator = LineCurve.from_maps(maps, cfg.denominator)

        fitted = cfg.e0_v_per_cm is None
        if cfg.e0_v_per_cm is None:
            point = fit_operating_field(
                numerator,
                denominator,
                geom,
                target_ratio=cfg.target_ratio,
                offset_um=cfg.ratio_offset_um,
            )
            e0 = point.e0
        else:
            e0 = cfg.e0_v_per_cm

        extra = (
            config.laser.lorentzian_fwhm_mhz,
            config.laser.gaussian_fwhm_mhz,
            zeeman_width(data, config.laser, config.geometry),
        )
        points = gradient_addressing_scan(
            [numerator, denominator], geom, cfg.offsets_um, e0, extra_widths_mhz=extra
        )
        context.write_csv(
            "addressing.csv",
            (
                "label",
                "offset_um",
                "field_V_per_cm",
                "center_MHz",
                "shift_MHz",
                "slope_MHz_per_V_per_cm",
                "width_MHz",
            ),
            (
                (
                    p.label,
                    p.offset_um,
                    p.field,
                    p.center_mhz,
                    p.shift_mhz,
                    p.slope_mhz_per_vcm,
                    p.width_mhz,
                )
                for p in points
            ),
        )
        logger.info("addressing_scan", e0=e0, fitted=fitted, points=len(points))
        return {
            "e0_V_per_cm": e0,
            "e0_fitted": fitted,
            "target_ratio": cfg.target_ratio,
        }
