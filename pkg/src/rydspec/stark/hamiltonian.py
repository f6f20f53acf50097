# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Stark Hamiltonian H(F) = H0 + F * D in GHz, F in V/cm, for one m block."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

import numpy as np
import structlog
from numpy.typing import NDArray
from scipy.constants import e, h, physical_constants

from rydspec.angular import HalfInt, clebsch_gordan, dipole_angular
from rydspec.errors import PhysicsDomainError
from rydspec.radial import RadialCache, default_cache, radial_dipole
from rydspec.stark.basis import StarkBasis
from rydspec.structure import (
    RydbergLevel,
    allowed_f,
    hyperfine_shift,
    level_energy,
    rydberg_hyperfine_a,
    rydberg_level,
)

logger = structlog.get_logger(__name__)

_BOHR_RADIUS_M = physical_constants["Bohr radius"][0]
# Energy of a 1 e*a0 dipole in 1 V/cm, in GHz.
EA0_VCM_IN_GHZ = e * _BOHR_RADIUS_M * 100.0 / h / 1e9

FloatArray = NDArray[np.float64]


@dataclass(frozen=True, slots=True)
class StarkOperators:
    """Field-independent pieces of one block."""

    h0: FloatArray  # GHz
    dipole: FloatArray  # GHz per V/cm
    couplings: FloatArray  # e a0, basis x intermediate channels
    coupling_norm: int  # number of intermediate sublevels averaged over

    def hamiltonian(self, field: float) -> FloatArray:
        return self.h0 + field * self.dipole


def _group_by_l(basis: StarkBasis) -> dict[int, list[int]]:
    groups: dict[int, list[int]] = defaultdict(list)
    for i, state in enumerate(basis.states):
        groups[state.level.l].append(i)
    return groups


def dipole_matrix(basis: StarkBasis, cache: RadialCache | None = None) -> FloatArray:
    """D_ab = <a|z|b> * EA0_VCM_IN_GHZ; only Delta l = 1, equal m_j and m_I couple."""
    cache = cache or default_cache()
    size = basis.size
    D = np.zeros((size, size), dtype=np.float64)
    groups = _group_by_l(basis)
    for l, lower in groups.items():
        upper = groups.get(l + 1, [])
        for a in lower:
            sa = basis.states[a]
            for b in upper:
                sb = basis.states[b]
                if sa.m_i != sb.m_i or sa.m_j != sb.m_j:
                    continue
                angular = dipole_angular(
                    sa.level.l, sa.level.j, sa.m_j, sb.level.l, sb.level.j, sb.m_j, 0
                )
                if angular == 0.0:
                    continue
                radial = radial_dipole(sa.level, sb.level, basis.grid, cache)
                D[a, b] = D[b, a] = radial * angular * EA0_VCM_IN_GHZ
    return D


def hyperfine_matrix(basis: StarkBasis) -> FloatArray:
    """Hyperfine operator (GHz) restricted to levels inside the target window.

    Built in the uncoupled |m_j; m_I> product basis as
    sum_F |F m_F><F m_F| * shift(F), which is unitarily equivalent to the
    coupled |j I F m_F> form.
    """
    size = basis.size
    H = np.zeros((size, size), dtype=np.float64)
    if not basis.spec.include_hyperfine:
        return H
    spin = basis.data.nuclear_spin
    m_f = basis.spec.m
    window = basis.spec.hyperfine_window_ghz
    centers = [level_energy(lvl, basis.data) for lvl in basis.target_levels.values()]

    by_level: dict[tuple[int, int, int], list[int]] = defaultdict(list)
    for i, state in enumerate(basis.states):
        if any(abs(basis.energies[i] - c) <= window for c in centers):
            by_level[state.level.key].append(i)

    for indices in by_level.values():
        level = basis.states[indices[0]].level
        a_mhz = rydberg_hyperfine_a(level, basis.data)
        if a_mhz == 0.0:
            continue
        shifts = {
            F: hyperfine_shift(a_mhz, 0.0, spin, level.j, F) / 1000.0
            for F in allowed_f(spin, level.j)
        }
        for a in indices:
            sa = basis.states[a]
            for b in indices:
                sb = basis.states[b]
                assert sa.m_i is not None and sb.m_i is not None
                total = 0.0
                for F, shift in shifts.items():
                    if abs(m_f.twice_value) > F.twice_value:
                        continue
                    total += (
                        clebsch_gordan(level.j, sa.m_j, spin, sa.m_i, F, m_f)
                        * clebsch_gordan(level.j, sb.m_j, spin, sb.m_i, F, m_f)
                        * shift
                    )
                H[a, b] = total
    return H


def intermediate_level(basis: StarkBasis) -> RydbergLevel:
    lvl = basis.data.level(basis.spec.intermediate)
    return rydberg_level(basis.data, lvl.n, lvl.l, lvl.j)


def excitation_couplings(
    basis: StarkBasis, cache: RadialCache | None = None
) -> tuple[FloatArray, int]:
    """<state| r_q |intermediate sublevel> for every reachable (sublevel, q) channel.

    Fine-structure blocks couple from |J' m_J'>; hyperfine blocks from
    |J' I F' m_F'> with F' = ``spec.intermediate_f``. Returns the coupling
    matrix and the number of intermediate sublevels to average over.
    """
    cache = cache or default_cache()
    inter = intermediate_level(basis)
    j_p = inter.j
    spin = basis.data.nuclear_spin
    block_m = basis.spec.m
    hyperfine = basis.spec.include_hyperfine
    f_p = basis.spec.intermediate_f

    channels: list[tuple[HalfInt, int]] = []
    for q in (-1, 0, 1):
        m_p = HalfInt(block_m.twice_value - 2 * q)
        top = f_p.twice_value if hyperfine else j_p.twice_value
        if abs(m_p.twice_value) <= top:
            channels.append((m_p, q))

    C = np.zeros((basis.size, len(channels)), dtype=np.float64)
    for i, state in enumerate(basis.states):
        if abs(state.level.l - inter.l) != 1:
            continue
        radial = radial_dipole(state.level, inter, basis.grid, cache)
        for c, (m_p, q) in enumerate(channels):
            m_j_p = HalfInt(state.m_j.twice_value - 2 * q)
            if abs(m_j_p.twice_value) > j_p.twice_value:
                continue
            angular = dipole_angular(
                state.level.l, state.level.j, state.m_j, inter.l, j_p, m_j_p, q
            )
            if hyperfine:
                assert state.m_i is not None
                angular *= clebsch_gordan(j_p, m_j_p, spin, state.m_i, f_p, m_p)
            C[i, c] = radial * angular
    sublevels = (f_p.twice_value if hyperfine else j_p.twice_value) + 1
    return C, sublevels


def build_operators(basis: StarkBasis, cache: RadialCache | None = None) -> StarkOperators:
    """Assemble H0, D and the excitation couplings for ``basis``."""
    h0 = np.diag(basis.energies) + hyperfine_matrix(basis)
    D = dipole_matrix(basis, cache)
    C, sublevels = excitation_couplings(basis, cache)
    if not np.all(np.isfinite(D)):
        msg = "non-finite dipole matrix element"
        raise PhysicsDomainError(msg)
    logger.debug("operators_built", size=basis.size, nonzero=int(np.count_nonzero(D)))
    return StarkOperators(h0=h0, dipole=D, couplings=C, coupling_norm=sublevels)


def build_hamiltonian(
    basis: StarkBasis, field: float, cache: RadialCache | None = None
) -> FloatArray:
    """Real symmetric H(F) in GHz for a field F in V/cm along z."""
    return build_operators(basis, cache).hamiltonian(field)
