# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Hyperfine-selective two-step excitation from 5S1/2 F=1 or F=2.

The red laser of each path is locked to a 5S1/2 F -> 5P3/2 F' resonance and
the blue laser is scanned across 5P3/2 F' -> nD. With the blue detuning
measured from the F' = 3 path, a path through F' sees its Rydberg lines at::

    center = (E_target - E_reference) - (shift(F') - shift(F' = 3))

so the F = 1 path (repumper, F' = 1) appears one 5P3/2 F'=1 -> F'=3 interval
above the F = 2 path (MOT laser, F' = 3).
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np
import structlog
from numpy.typing import NDArray

from rydspec.angular import HalfInt, fine_transition_strength, hyperfine_transition_strength
from rydspec.errors import ConfigError, PhysicsDomainError
from rydspec.spectra.profiles import SpectralLine, Spectrum, synthesize_spectrum
from rydspec.structure import (
    AtomData,
    allowed_f,
    hyperfine_shift,
    level_energy,
    parse_label,
    rydberg_level,
)

logger = structlog.get_logger(__name__)

GROUND = "5S1/2"
INTERMEDIATE = "5P3/2"
REFERENCE_F = HalfInt(6)
DEFAULT_LOCKS: Mapping[int, int] = {1: 1, 2: 3}
DEFAULT_TARGETS = ("41D5/2", "41D3/2")

FloatArray = NDArray[np.float64]


@dataclass(frozen=True, slots=True)
class HFSelectPanel:
    ground_f: int
    pumped: bool
    population: float
    spectrum: Spectrum

    @property
    def name(self) -> str:
        return f"F={self.ground_f} {'pumped' if self.pumped else 'unpumped'}"


def _intermediate_shift(data: AtomData, f: HalfInt) -> float:
    level = data.level(INTERMEDIATE)
    return hyperfine_shift(level.hyperfine_a, level.hyperfine_b, data.nuclear_spin, level.j, f)


def check_lock(data: AtomData, ground_f: int, lock_f: int) -> None:
    """The lock must be a dipole-allowed 5S1/2 F -> 5P3/2 F' line."""
    spin = data.nuclear_spin
    grounds = [f.twice_value for f in allowed_f(spin, data.level(GROUND).j)]
    excited = [f.twice_value for f in allowed_f(spin, data.level(INTERMEDIATE).j)]
    if 2 * ground_f not in grounds:
        msg = f"5S1/2 has no F={ground_f} level"
        raise ConfigError(msg)
    if 2 * lock_f not in excited or abs(lock_f - ground_f) > 1:
        msg = f"red laser lock F={ground_f} -> F'={lock_f} is not a dipole-allowed resonance"
        raise ConfigError(msg)


def path_offset_mhz(data: AtomData, lock_f: int) -> float:
    """Blue-detuning offset of the F' path relative to the F' = 3 path."""
    f = HalfInt(2 * lock_f)
    return -(_intermediate_shift(data, f) - _intermediate_shift(data, REFERENCE_F))


def target_offsets_mhz(data: AtomData, targets: Sequence[str]) -> dict[str, float]:
    """Zero-field line positions relative to the first target, in MHz."""
    energies: dict[str, float] = {}
    for label in targets:
        n, l, j = parse_label(label)
        if n is None:
            msg = f"target {label!r} needs a principal quantum number"
            raise ConfigError(msg)
        energies[label] = level_energy(rydberg_level(data, n, l, j), data)
    reference = energies[targets[0]]
    return {label: (e - reference) * 1000.0 for label, e in energies.items()}


def path_lines(
    data: AtomData,
    ground_f: int,
    lock_f: int,
    population: float,
    *,
    targets: Sequence[str] = DEFAULT_TARGETS,
    target_offsets: Mapping[str, float] | None = None,
    lorentzian_fwhm: float = 1.0,
    gaussian_fwhm: float = 0.0,
    equal_dipole_factors: bool = False,
) -> list[SpectralLine]:
    """Lines of one excitation path weighted by population and dipole factors.

    The weight is population * S(F -> F') * S(3/2 -> j) where the relative
    hyperfine and fine-structure strengths each sum to one; with
    ``equal_dipole_factors`` both factors are 1.
    """
    check_lock(data, ground_f, lock_f)
    if not 0.0 <= population <= 1.0:
        msg = f"population must lie in [0, 1], got {population}"
        raise PhysicsDomainError(msg)
    offsets = dict(target_offsets) if target_offsets else target_offsets_mhz(data, targets)
    inter = data.level(INTERMEDIATE)
    ground = data.level(GROUND)
    shift = path_offset_mhz(data, lock_f)
    hf = 1.0
    if not equal_dipole_factors:
        hf = hyperfine_transition_strength(ground.j, ground_f, inter.j, lock_f, data.nuclear_spin)

    lines = []
    for label in targets:
        _, l, j = parse_label(label)
        fine = 1.0 if equal_dipole_factors else fine_transition_strength(inter.l, inter.j, l, j)
        lines.append(
            SpectralLine(
                line_id=f"F={ground_f}->F'={lock_f}->{label}",
                center=offsets[label] + shift,
                strength=population * hf * fine,
                gaussian_fwhm=gaussian_fwhm,
                lorentzian_fwhm=lorentzian_fwhm,
            )
        )
    return lines


def hyperfine_selective_spectrum(
    data: AtomData,
    ground_f: int,
    grid: FloatArray | Sequence[float],
    *,
    population: float = 1.0,
    lock_f: int | None = None,
    targets: Sequence[str] = DEFAULT_TARGETS,
    lorentzian_fwhm: float = 1.0,
    gaussian_fwhm: float = 0.0,
    equal_dipole_factors: bool = False,
) -> Spectrum:
    """Blue-scan spectrum of one ground-state path."""
    if lock_f is None:
        if ground_f not in DEFAULT_LOCKS:
            msg = f"no default red-laser lock for F={ground_f}"
            raise ConfigError(msg)
        lock_f = DEFAULT_LOCKS[ground_f]
    lines = path_lines(
        data,
        ground_f,
        lock_f,
        population,
        targets=targets,
        lorentzian_fwhm=lorentzian_fwhm,
        gaussian_fwhm=gaussian_fwhm,
        equal_dipole_factors=equal_dipole_factors,
    )
    return synthesize_spectrum(lines, grid)


def hyperfine_selective_panels(
    data: AtomData,
    grid: FloatArray | Sequence[float],
    *,
    pump_fraction: float,
    locks: Mapping[int, int] = DEFAULT_LOCKS,
    targets: Sequence[str] = DEFAULT_TARGETS,
    lorentzian_fwhm: float = 1.0,
    gaussian_fwhm: float = 0.0,
    equal_dipole_factors: bool = False,
) -> list[HFSelectPanel]:
    """The four runs: each ground level, with and without optical pumping.

    Without pumping the repumper keeps every atom in F = 2. Pumping moves
    ``pump_fraction`` of them to F = 1 and leaves the rest in F = 2.
    """
    if not 0.0 <= pump_fraction <= 1.0:
        msg = f"pump fraction must lie in [0, 1], got {pump_fraction}"
        raise ConfigError(msg)
    panels = []
    for ground_f in (1, 2):
        if ground_f not in locks:
            msg = f"no red-laser lock configured for F={ground_f}"
            raise ConfigError(msg)
        for pumped in (False, True):
            if ground_f == 1:
                population = pump_fraction if pumped else 0.0
            else:
                population = 1.0 - pump_fraction if pumped else 1.0
            spectrum = hyperfine_selective_spectrum(
                data,
                ground_f,
                grid,
                population=population,
                lock_f=locks[ground_f],
                targets=targets,
                lorentzian_fwhm=lorentzian_fwhm,
                gaussian_fwhm=gaussian_fwhm,
                equal_dipole_factors=equal_dipole_factors,
            )
            panels.append(HFSelectPanel(ground_f, pumped, population, spectrum))
    logger.info("hfselect_panels", pump_fraction=pump_fraction, panels=len(panels))
    return panels
