# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Autler-Townes splitting of 5S1/2 -> 5P3/2 seen on a weak Rydberg probe.

Conventions (frequencies in MHz, cyclic):

* ``detuning`` Delta = nu(5P) - nu(red laser); Delta > 0 means the red laser
  sits below resonance.
* probe detuning delta = nu(blue laser) - nu(Rydberg - 5P).

In the frame rotating with both lasers the ladder Hamiltonian is::

    H = [[0,     W/2,   0        ],
         [W/2,   Delta, Wp/2     ],
         [0,     Wp/2,  Delta - d]]

with W the red Rabi frequency. The red-dressed pair has energies
(Delta -+ sqrt(Delta^2 + W^2)) / 2, so the probe finds the doublet at
delta = (Delta +- sqrt(Delta^2 + W^2)) / 2. Line amplitudes are the 5S1/2
weights of the dressed states, a+- = (1 +- Delta / sqrt(Delta^2 + W^2)) / 2,
which is how the ground population divides on a sudden turn-on of the red
laser. The "+" line belongs to the more ground-like state for Delta > 0.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import structlog
from numpy.typing import NDArray
from scipy.integrate import solve_ivp

from rydspec.errors import MissingConstantError, PhysicsDomainError
from rydspec.spectra.profiles import SpectralLine, Spectrum, synthesize_spectrum
from rydspec.structure import AtomData

logger = structlog.get_logger(__name__)

# Mean coupling factor for 5S1/2 -> 5P3/2 with unpolarized sublevels.
DEFAULT_COUPLING = 7.0 / 15.0
DEFAULT_PROBE_LINEWIDTH = 1.0  # MHz

FloatArray = NDArray[np.float64]


@dataclass(frozen=True, slots=True)
class LaserDrive:
    """Red laser driving 5S1/2 -> 5P3/2."""

    saturation: float  # I / I_s
    linewidth: float  # natural linewidth Gamma of 5P3/2, MHz
    detuning: float = 0.0  # MHz
    coupling: float = DEFAULT_COUPLING

    def __post_init__(self) -> None:
        if not self.saturation >= 0:
            msg = f"intensity ratio must be non-negative, got {self.saturation}"
            raise PhysicsDomainError(msg)
        if not self.linewidth > 0:
            msg = f"natural linewidth must be positive, got {self.linewidth}"
            raise PhysicsDomainError(msg)
        if not 0 < self.coupling <= 1:
            msg = f"coupling factor must lie in (0, 1], got {self.coupling}"
            raise PhysicsDomainError(msg)
        if not math.isfinite(self.detuning):
            msg = "detuning must be finite"
            raise PhysicsDomainError(msg)

    @classmethod
    def from_data(
        cls,
        data: AtomData,
        saturation: float,
        *,
        detuning: float = 0.0,
        coupling: float = DEFAULT_COUPLING,
        level: str = "5P3/2",
    ) -> LaserDrive:
        linewidth = data.level(level).linewidth
        if linewidth is None:
            msg = f"no natural linewidth for {level} in {data.species} data"
            raise MissingConstantError(msg)
        return cls(saturation=saturation, linewidth=linewidth, detuning=detuning, coupling=coupling)


@dataclass(frozen=True, slots=True)
class DressedPair:
    """The Autler-Townes doublet in probe-detuning space."""

    centers: tuple[float, float]  # (+ line, - line), MHz
    amplitudes: tuple[float, float]  # 5S1/2 weights, summing to one

    @property
    def splitting(self) -> float:
        return self.centers[0] - self.centers[1]

    @property
    def excited_characters(self) -> tuple[float, float]:
        """5P3/2 weight of the dressed state behind each line."""
        return self.amplitudes[1], self.amplitudes[0]


def rabi_frequency(drive: LaserDrive) -> float:
    """Omega = c_g * Gamma * sqrt(s / 2), in MHz."""
    return drive.coupling * drive.linewidth * math.sqrt(drive.saturation / 2.0)


def dressed_lines(rabi: float, detuning: float) -> DressedPair:
    if rabi < 0:
        msg = f"Rabi frequency must be non-negative, got {rabi}"
        raise PhysicsDomainError(msg)
    width = math.hypot(detuning, rabi)
    if width == 0.0:
        return DressedPair(centers=(0.0, 0.0), amplitudes=(0.5, 0.5))
    plus = 0.5 * (1.0 + detuning / width)
    return DressedPair(
        centers=(0.5 * (detuning + width), 0.5 * (detuning - width)),
        amplitudes=(plus, 1.0 - plus),
    )


def autler_townes_lines(
    drive: LaserDrive,
    *,
    probe_linewidth: float = DEFAULT_PROBE_LINEWIDTH,
    extra_gaussian_fwhm: float = 0.0,
) -> tuple[SpectralLine, SpectralLine]:
    """Doublet lines; each is broadened by Gamma times its 5P3/2 character."""
    pair = dressed_lines(rabi_frequency(drive), drive.detuning)
    characters = pair.excited_characters
    lines = tuple(
        SpectralLine(
            line_id=name,
            center=center,
            strength=amplitude,
            gaussian_fwhm=extra_gaussian_fwhm,
            lorentzian_fwhm=probe_linewidth + drive.linewidth * character,
        )
        for name, center, amplitude, character in zip(
            ("AT+", "AT-"), pair.centers, pair.amplitudes, characters, strict=True
        )
    )
    return lines[0], lines[1]


def autler_townes_spectrum(
    drive: LaserDrive,
    grid: FloatArray | Sequence[float],
    *,
    probe_linewidth: float = DEFAULT_PROBE_LINEWIDTH,
    extra_gaussian_fwhm: float = 0.0,
) -> Spectrum:
    """Synthesized probe spectrum of the dressed doublet."""
    lines = autler_townes_lines(
        drive, probe_linewidth=probe_linewidth, extra_gaussian_fwhm=extra_gaussian_fwhm
    )
    return synthesize_spectrum(lines, grid)


@dataclass(frozen=True, slots=True)
class SweepRow:
    saturation: float
    splitting: float  # MHz
    resolved: bool


def intensity_sweep(
    saturations: Sequence[float],
    linewidth: float,
    grid: FloatArray | Sequence[float],
    *,
    detuning: float = 0.0,
    coupling: float = DEFAULT_COUPLING,
    probe_linewidth: float = DEFAULT_PROBE_LINEWIDTH,
    extra_gaussian_fwhm: float = 0.0,
    min_prominence: float = 0.01,
) -> list[SweepRow]:
    """Splitting and whether the synthesized doublet shows two maxima, per s."""
    rows = []
    for s in saturations:
        drive = LaserDrive(saturation=s, linewidth=linewidth, detuning=detuning, coupling=coupling)
        spectrum = autler_townes_spectrum(
            drive, grid, probe_linewidth=probe_linewidth, extra_gaussian_fwhm=extra_gaussian_fwhm
        )
        peaks = spectrum.peak_positions(min_prominence)
        rows.append(
            SweepRow(
                saturation=float(s),
                splitting=math.hypot(detuning, rabi_frequency(drive)),
                resolved=peaks.shape[0] >= 2,
            )
        )
        logger.debug("sweep_point", s=s, peaks=int(peaks.shape[0]))
    return rows


# ---------------------------------------------------------------------------
# Time-domain oracle
# ---------------------------------------------------------------------------


def three_level_probe_scan(
    drive: LaserDrive,
    probe_detunings: FloatArray | Sequence[float],
    *,
    probe_rabi: float = 0.05,
    duration_us: float = 4.0,
    rtol: float = 1e-8,
    atol: float = 1e-11,
) -> FloatArray:
    """Rydberg population after ``duration_us`` for every probe detuning.

    Integrates the ladder Schrodinger equation from 5S1/2 with the 5P3/2
    decay as a non-Hermitian -i Gamma/2 term. All detunings are propagated in
    one vectorized system.
    """
    delta = np.asarray(probe_detunings, dtype=np.float64)
    count = delta.shape[0]
    rabi = rabi_frequency(drive)
    two_pi = 2.0 * math.pi
    e_energy = drive.detuning - 0.5j * drive.linewidth
    r_energy = drive.detuning - delta

    def rhs(_t: float, y: NDArray[np.complex128]) -> NDArray[np.complex128]:
        g, e, r = y[:count], y[count : 2 * count], y[2 * count :]
        dg = 0.5 * rabi * e
        de = 0.5 * rabi * g + e_energy * e + 0.5 * probe_rabi * r
        dr = 0.5 * probe_rabi * e + r_energy * r
        return -1j * two_pi * np.concatenate([dg, de, dr])

    y0 = np.zeros(3 * count, dtype=np.complex128)
    y0[:count] = 1.0
    solution = solve_ivp(rhs, (0.0, duration_us), y0, method="DOP853", rtol=rtol, atol=atol)
    if not solution.success:
        msg = f"three-level integration failed: {solution.message}"
        raise PhysicsDomainError(msg)
    final = solution.y[2 * count :, -1]
    return np.asarray(np.abs(final) ** 2, dtype=np.float64)
