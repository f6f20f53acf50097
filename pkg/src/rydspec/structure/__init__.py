# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Field-free atomic structure: constants data file, quantum defects, hyperfine shifts."""

from rydspec.structure.constants import (
    AtomData,
    DefectSeries,
    LevelConstants,
    format_label,
    load_atom_data,
    parse_atom_data,
    parse_label,
)
from rydspec.structure.levels import (
    DataCheck,
    RydbergLevel,
    allowed_f,
    effective_n,
    g_f_factor,
    hyperfine_interval,
    hyperfine_levels,
    hyperfine_shift,
    level_energy,
    mf_spacing_mhz_per_gauss,
    quantum_defect,
    rydberg_hyperfine_a,
    rydberg_level,
    validate_atom_data,
    zeeman_slope,
)

__all__ = [
    "AtomData",
    "DataCheck",
    "DefectSeries",
    "LevelConstants",
    "RydbergLevel",
    "allowed_f",
    "effective_n",
    "format_label",
    "g_f_factor",
    "hyperfine_interval",
    "hyperfine_levels",
    "hyperfine_shift",
    "level_energy",
    "load_atom_data",
    "mf_spacing_mhz_per_gauss",
    "parse_atom_data",
    "parse_label",
    "quantum_defect",
    "rydberg_hyperfine_a",
    "rydberg_level",
    "validate_atom_data",
    "zeeman_slope",
]
