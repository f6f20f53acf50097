# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Spectrum synthesis: line profiles, spatial addressing, hyperfine-selective scans."""

from rydspec.spectra.addressing import (
    AddressingPoint,
    CloudGeometry,
    LineCurve,
    OperatingPoint,
    fit_operating_field,
    gradient_addressing_scan,
    stark_lines_at,
)
from rydspec.spectra.hfselect import (
    HFSelectPanel,
    check_lock,
    hyperfine_selective_panels,
    hyperfine_selective_spectrum,
    path_lines,
    path_offset_mhz,
    target_offsets_mhz,
)
from rydspec.spectra.profiles import (
    SpectralLine,
    Spectrum,
    combine_widths,
    detuning_grid,
    line_profile,
    synthesize_spectrum,
    voigt_fwhm,
)

__all__ = [
    "AddressingPoint",
    "CloudGeometry",
    "HFSelectPanel",
    "LineCurve",
    "OperatingPoint",
    "SpectralLine",
    "Spectrum",
    "check_lock",
    "combine_widths",
    "detuning_grid",
    "fit_operating_field",
    "gradient_addressing_scan",
    "hyperfine_selective_panels",
    "hyperfine_selective_spectrum",
    "line_profile",
    "path_lines",
    "path_offset_mhz",
    "stark_lines_at",
    "synthesize_spectrum",
    "target_offsets_mhz",
    "voigt_fwhm",
]
