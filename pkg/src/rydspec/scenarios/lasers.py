# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Scenarios driven by the excitation lasers rather than the static field."""

from __future__ import annotations

from collections.abc import Sequence
from typing import Any

from rydspec.dressed import (
    LaserDrive,
    autler_townes_lines,
    autler_townes_spectrum,
    intensity_sweep,
    rabi_frequency,
)
from rydspec.schemas.config import RunConfig
from rydspec.scenarios.base import RunContext, Scenario
from rydspec.scenarios.common import probe_grid
from rydspec.spectra import hyperfine_selective_panels, path_offset_mhz


class HFSelectScenario(Scenario):
    @property
    def name(self) -> str:
        return "hfselect"

    @property
    def description(self) -> str:
        return "Blue scans from 5S1/2 F=1 and F=2, with and without optical pumping"

    def run(self, config: RunConfig, context: RunContext) -> dict[str, Any]:
        cfg = config.hfselect
        locks = {1: cfg.lock_f1, 2: cfg.lock_f2}
        panels = hyperfine_selective_panels(
            context.data,
            probe_grid(config.spectrum),
            pump_fraction=cfg.pump_fraction,
            locks=locks,
            targets=config.basis.targets,
            lorentzian_fwhm=config.laser.lorentzian_fwhm_mhz,
            gaussian_fwhm=config.laser.gaussian_fwhm_mhz,
            equal_dipole_factors=cfg.equal_dipole_factors,
        )
        columns = [p.spectrum.intensity.tolist() for p in panels]
        header = ["detuning_MHz"] + [
            f"F{p.ground_f}_{'pumped' if p.pumped else 'unpumped'}" for p in panels
        ]
        detuning = panels[0].spectrum.detuning.tolist()
        context.write_csv(
            "hfselect.csv",
            header,
            ([d, *(col[i] for col in columns)] for i, d in enumerate(detuning)),
        )
        separation = path_offset_mhz(context.data, cfg.lock_f1) - path_offset_mhz(
            context.data, cfg.lock_f2
        )
        return {
            "path_separation_MHz": separation,
            "panels": [
                {
                    "name": p.name,
                    "population": p.population,
                    "lines": [
                        {"id": line.line_id, "center_MHz": line.center, "strength": line.strength}
                        for line in p.spectrum.lines
                    ],
                }
                for p in panels
            ],
        }


class AutlerScenario(Scenario):
    @property
    def name(self) -> str:
        return "autler"

    @property
    def description(self) -> str:
        return "Autler-Townes doublet of 5P3/2 probed on the Rydberg transition"

    def run(self, config: RunConfig, context: RunContext) -> dict[str, Any]:
        cfg = config.drive
        grid = probe_grid(config.spectrum)
        drive = LaserDrive.from_data(
            context.data, cfg.saturation, detuning=cfg.detuning_mhz, coupling=cfg.coupling
        )
        widths = {
            "probe_linewidth": cfg.probe_linewidth_mhz,
            "extra_gaussian_fwhm": cfg.extra_gaussian_fwhm_mhz,
        }
        spectrum = autler_townes_spectrum(drive, grid, **widths)
        context.write_csv(
            "autler.csv",
            ("detuning_MHz", "intensity"),
            zip(spectrum.detuning.tolist(), spectrum.intensity.tolist(), strict=True),
        )

        saturations: Sequence[float] = context.options.get("sweep_s") or cfg.sweep_s
        rows = intensity_sweep(
            saturations,
            drive.linewidth,
            grid,
            detuning=cfg.detuning_mhz,
            coupling=cfg.coupling,
            min_prominence=cfg.min_prominence,
            **widths,
        )
        context.write_csv(
            "autler_sweep.csv",
            ("saturation", "splitting_MHz", "resolved"),
            ((r.saturation, r.splitting, r.resolved) for r in rows),
        )
        lines = autler_townes_lines(drive, **widths)
        return {
            "rabi_MHz": rabi_frequency(drive),
            "linewidth_MHz": drive.linewidth,
            "centers_MHz": [line.center for line in lines],
            "peaks_MHz": spectrum.peak_positions(cfg.min_prominence).tolist(),
            "sweep": [
                {"saturation": r.saturation, "splitting_MHz": r.splitting, "resolved": r.resolved}
                for r in rows
            ],
        }
