# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Line shapes and synthesized spectra on a probe-detuning grid (MHz)."""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np
from numpy.typing import NDArray
from scipy.integrate import trapezoid
from scipy.signal import find_peaks
from scipy.special import voigt_profile

from rydspec.errors import PhysicsDomainError, ResolutionError

FloatArray = NDArray[np.float64]
BroadeningShape = Literal["tophat", "gaussian"]

_FWHM_PER_SIGMA = 2.0 * math.sqrt(2.0 * math.log(2.0))
# Fewest shifted copies used to average a top-hat distribution.
_MIN_TOPHAT_SAMPLES = 9

# ---------------------------------------------------------------------------
# Data classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SpectralLine:
    """One line: center and widths in MHz, strength in arbitrary units."""

    line_id: str
    center: float
    strength: float
    gaussian_fwhm: float = 0.0
    lorentzian_fwhm: float = 0.0
    tophat_width: float = 0.0

    def __post_init__(self) -> None:
        if self.strength < 0:
            msg = f"line {self.line_id} has negative strength {self.strength}"
            raise PhysicsDomainError(msg)
        for name in ("gaussian_fwhm", "lorentzian_fwhm", "tophat_width"):
            if getattr(self, name) < 0:
                msg = f"line {self.line_id} has negative {name}"
                raise PhysicsDomainError(msg)


@dataclass(frozen=True, slots=True)
class Spectrum:
    """Intensity sampled on a probe-detuning grid with its line decomposition."""

    detuning: FloatArray  # MHz
    intensity: FloatArray
    lines: tuple[SpectralLine, ...] = ()

    def integral(self) -> float:
        return float(trapezoid(self.intensity, self.detuning))

    def add(self, other: Spectrum) -> Spectrum:
        if not np.array_equal(self.detuning, other.detuning):
            msg = "spectra on different grids cannot be added"
            raise ResolutionError(msg)
        return Spectrum(
            detuning=self.detuning,
            intensity=self.intensity + other.intensity,
            lines=self.lines + other.lines,
        )

    def scaled(self, factor: float) -> Spectrum:
        """Multiply intensities and strengths, e.g. by an MCP calibration factor."""
        if factor < 0:
            msg = f"scale factor must be non-negative, got {factor}"
            raise PhysicsDomainError(msg)
        return Spectrum(
            detuning=self.detuning,
            intensity=self.intensity * factor,
            lines=tuple(replace(line, strength=line.strength * factor) for line in self.lines),
        )

    def fwhm(self) -> float:
        """Full width at half maximum of the highest peak, linearly interpolated."""
        y = self.intensity
        x = self.detuning
        top = int(np.argmax(y))
        half = y[top] / 2.0
        if half <= 0:
            msg = "spectrum has no positive peak"
            raise ResolutionError(msg)
        left = top
        while left > 0 and y[left] > half:
            left -= 1
        right = top
        while right < y.shape[0] - 1 and y[right] > half:
            right += 1
        if y[left] > half or y[right] > half:
            msg = "peak is not resolved inside the grid"
            raise ResolutionError(msg)
        x_left = np.interp(half, [y[left], y[left + 1]], [x[left], x[left + 1]])
        x_right = np.interp(half, [y[right], y[right - 1]], [x[right], x[right - 1]])
        return float(x_right - x_left)

    def peak_positions(self, min_prominence: float = 0.01) -> FloatArray:
        """Local maxima with prominence above ``min_prominence`` times the maximum.

        Positions are refined by a parabola through the three samples around
        each maximum.
        """
        y = self.intensity
        if y.shape[0] < 3 or np.max(y) <= 0:
            return np.empty(0)
        peaks, _ = find_peaks(y, prominence=min_prominence * float(np.max(y)))
        step = self.detuning[1] - self.detuning[0]
        refined = []
        for p in peaks:
            a, b, c = y[p - 1], y[p], y[p + 1]
            denom = a - 2.0 * b + c
            shift = 0.5 * (a - c) / denom if denom != 0 else 0.0
            refined.append(self.detuning[p] + shift * step)
        return np.asarray(refined, dtype=np.float64)


# ---------------------------------------------------------------------------
# Profiles
# ---------------------------------------------------------------------------


def detuning_grid(start: float, stop: float, step: float) -> FloatArray:
    """Inclusive uniform grid; the step is adjusted to land on ``stop``."""
    if step <= 0 or stop <= start:
        msg = f"invalid detuning grid start={start} stop={stop} step={step}"
        raise ResolutionError(msg)
    count = round((stop - start) / step) + 1
    return np.linspace(start, stop, max(count, 2))


def combine_widths(*fwhm: float) -> float:
    """Quadrature sum of Gaussian FWHM contributions."""
    return math.sqrt(sum(w * w for w in fwhm))


def voigt_fwhm(gaussian_fwhm: float, lorentzian_fwhm: float) -> float:
    """Approximate Voigt FWHM (0.02 % accuracy)."""
    return 0.5346 * lorentzian_fwhm + math.sqrt(
        0.2166 * lorentzian_fwhm**2 + gaussian_fwhm**2
    )


def _check_grid(grid: FloatArray) -> None:
    if grid.ndim != 1 or grid.shape[0] < 2 or grid[-1] - grid[0] <= 0:
        msg = "probe grid must be increasing with a nonzero span"
        raise ResolutionError(msg)


def _voigt(
    grid: FloatArray, center: float, gaussian_fwhm: float, lorentzian_fwhm: float
) -> FloatArray:
    sigma = gaussian_fwhm / _FWHM_PER_SIGMA
    gamma = lorentzian_fwhm / 2.0
    return np.asarray(voigt_profile(grid - center, sigma, gamma), dtype=np.float64)


def line_profile(
    grid: FloatArray,
    line: SpectralLine,
    shape: BroadeningShape = "tophat",
) -> FloatArray:
    """Voigt profile of ``line`` with its field-inhomogeneity width folded in.

    ``tophat`` averages the Voigt profile over centers spread uniformly across
    ``tophat_width``; ``gaussian`` adds that width to the Gaussian FWHM in
    quadrature. The sampled profile is renormalized so its trapezoidal
    integral over the grid equals the line strength.
    """
    grid = np.asarray(grid, dtype=np.float64)
    _check_grid(grid)
    if not grid[0] <= line.center <= grid[-1]:
        msg = f"line {line.line_id} at {line.center:.3f} MHz lies outside the probe grid"
        raise ResolutionError(msg)

    gaussian = line.gaussian_fwhm
    spread = 0.0
    if shape == "gaussian":
        gaussian = combine_widths(gaussian, line.tophat_width)
    else:
        spread = line.tophat_width
    step = float(np.min(np.diff(grid)))
    if gaussian == 0.0 and line.lorentzian_fwhm == 0.0 and spread == 0.0:
        msg = f"line {line.line_id} has zero width and cannot be sampled"
        raise ResolutionError(msg)
    if gaussian == 0.0 and line.lorentzian_fwhm == 0.0:
        # Pure top-hat; a sub-step Gaussian keeps the edges finite.
        gaussian = step

    if spread > 0.0:
        samples = max(_MIN_TOPHAT_SAMPLES, 2 * math.ceil(spread / step) + 1)
        offsets = np.linspace(-spread / 2.0, spread / 2.0, samples)
        profile = np.mean(
            [_voigt(grid, line.center + d, gaussian, line.lorentzian_fwhm) for d in offsets],
            axis=0,
        )
    else:
        profile = _voigt(grid, line.center, gaussian, line.lorentzian_fwhm)

    area = trapezoid(profile, grid)
    if area <= 0 or not np.isfinite(area):
        msg = f"line {line.line_id} is narrower than the probe grid can resolve"
        raise ResolutionError(msg)
    return np.asarray(profile * (line.strength / area), dtype=np.float64)


def synthesize_spectrum(
    lines: Iterable[SpectralLine],
    grid: FloatArray | Sequence[float],
    shape: BroadeningShape = "tophat",
) -> Spectrum:
    """Sum of line profiles on ``grid``; lines keep their input order."""
    detuning = np.asarray(grid, dtype=np.float64)
    _check_grid(detuning)
    kept = tuple(lines)
    intensity = np.zeros_like(detuning)
    for line in kept:
        if line.strength == 0.0:
            continue
        intensity += line_profile(detuning, line, shape)
    return Spectrum(detuning=detuning, intensity=intensity, lines=kept)
