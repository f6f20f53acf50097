# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Stark effect: bases, Hamiltonians, maps and hyperfine-resolved lines."""

from rydspec.stark.basis import BasisSpec, BasisState, StarkBasis, build_basis
from rydspec.stark.hamiltonian import (
    EA0_VCM_IN_GHZ,
    StarkOperators,
    build_hamiltonian,
    build_operators,
    dipole_matrix,
    excitation_couplings,
    hyperfine_matrix,
)
from rydspec.stark.hyperfine import (
    HyperfineLine,
    HyperfineLineSet,
    count_components,
    hyperfine_stark_lines,
    reachable_m_f,
)
from rydspec.stark.maps import (
    TRACKING_THRESHOLD,
    StarkMap,
    check_field_grid,
    fit_quadratic_coefficient,
    line_centers,
    manifold_spacing,
    residual_field_bound,
    second_order_shift,
    stark_map,
    stark_maps,
)

__all__ = [
    "EA0_VCM_IN_GHZ",
    "TRACKING_THRESHOLD",
    "BasisSpec",
    "BasisState",
    "HyperfineLine",
    "HyperfineLineSet",
    "StarkBasis",
    "StarkMap",
    "StarkOperators",
    "build_basis",
    "build_hamiltonian",
    "build_operators",
    "check_field_grid",
    "count_components",
    "dipole_matrix",
    "excitation_couplings",
    "fit_quadratic_coefficient",
    "hyperfine_matrix",
    "hyperfine_stark_lines",
    "line_centers",
    "manifold_spacing",
    "reachable_m_f",
    "residual_field_bound",
    "second_order_shift",
    "stark_map",
    "stark_maps",
]
