# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Stark maps: per-field diagonalization with adiabatic track assignment.

Usage::

    basis = build_basis(BasisSpec(center_n=40, m=HalfInt(1)), data)
    smap = stark_map(basis, np.linspace(0.0, 20.0, 201))
    smap.energies[:, track]  # GHz

Track ids are basis indices: at the first field point every eigenvector is
matched to the basis state it overlaps most, and later points follow the
previous eigenvectors. Within exactly degenerate clusters at the first point
the eigenvectors are rotated to diagonalize the dipole operator, which picks
the zero-field limit of the in-field states.
"""

from __future__ import annotations

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import structlog
from numpy.typing import NDArray
from scipy.optimize import linear_sum_assignment

from rydspec.config import get_settings
from rydspec.errors import FieldRangeError, PhysicsDomainError, ResolutionError
from rydspec.radial import RadialCache
from rydspec.stark.basis import StarkBasis
from rydspec.stark.hamiltonian import StarkOperators, build_operators

logger = structlog.get_logger(__name__)

TRACKING_THRESHOLD = 0.5
_DEGENERACY_GHZ = 1e-9

FloatArray = NDArray[np.float64]


@dataclass(slots=True)
class StarkMap:
    """Eigenvalues and per-track properties of one symmetry block.

    Arrays are indexed ``[field_index, track_id]``.
    """

    basis: StarkBasis
    fields: FloatArray  # V/cm
    energies: FloatArray  # GHz
    characters: dict[str, FloatArray]  # target label -> |<target|eig>|^2
    strengths: FloatArray  # (e a0)^2 from the intermediate level
    diabatic: NDArray[np.bool_]
    reference_energy: float  # GHz

    @property
    def tracks(self) -> int:
        return self.energies.shape[1]

    def relative_mhz(self) -> FloatArray:
        """Energies relative to the zero-field reference target, in MHz."""
        return (self.energies - self.reference_energy) * 1000.0

    def target_tracks(self, label: str) -> tuple[int, ...]:
        try:
            return self.basis.targets[label]
        except KeyError:
            msg = f"{label} is not a target of this map"
            raise PhysicsDomainError(msg) from None


# ---------------------------------------------------------------------------
# Diagonalization and tracking
# ---------------------------------------------------------------------------


def check_field_grid(fields: Sequence[float] | FloatArray) -> FloatArray:
    grid = np.asarray(fields, dtype=np.float64)
    if grid.ndim != 1 or grid.size == 0:
        msg = "field grid must be a non-empty 1-d sequence"
        raise FieldRangeError(msg)
    if not np.all(np.isfinite(grid)):
        msg = "field grid contains non-finite values"
        raise FieldRangeError(msg)
    steps = np.diff(grid)
    if steps.size and not (np.all(steps > 0) or np.all(steps < 0)):
        msg = "field grid must be strictly monotone"
        raise FieldRangeError(msg)
    return grid


def _resolve_degeneracies(
    w: FloatArray, V: FloatArray, dipole: FloatArray
) -> FloatArray:
    """Rotate degenerate eigenvector clusters onto eigenvectors of the dipole operator."""
    V = V.copy()
    start = 0
    size = w.shape[0]
    while start < size:
        stop = start + 1
        while stop < size and w[stop] - w[stop - 1] < _DEGENERACY_GHZ:
            stop += 1
        if stop - start > 1:
            block = V[:, start:stop]
            _, rotation = np.linalg.eigh(block.T @ dipole @ block)
            V[:, start:stop] = block @ rotation
        start = stop
    return V


def _match(previous: FloatArray, current: FloatArray) -> tuple[NDArray[np.intp], FloatArray]:
    """Assign current eigenvectors to previous tracks.

    Pairs with overlap above the threshold are unique and taken directly; the
    rest are matched by maximal total overlap. Returns the column of
    ``current`` for every track and the overlap of each assignment.
    """
    overlap = (previous.T @ current) ** 2
    size = overlap.shape[0]
    order = np.full(size, -1, dtype=np.intp)
    best = np.argmax(overlap, axis=1)
    sure = overlap[np.arange(size), best] > TRACKING_THRESHOLD
    order[sure] = best[sure]

    rest_rows = np.flatnonzero(~sure)
    if rest_rows.size:
        taken = np.zeros(size, dtype=bool)
        taken[best[sure]] = True
        rest_cols = np.flatnonzero(~taken)
        rows, cols = linear_sum_assignment(overlap[np.ix_(rest_rows, rest_cols)], maximize=True)
        order[rest_rows[rows]] = rest_cols[cols]
    return order, overlap[np.arange(size), order]


def _diagonalize(operators: StarkOperators, field: float) -> tuple[FloatArray, FloatArray]:
    w, V = np.linalg.eigh(operators.hamiltonian(field))
    return w, V


def stark_map(
    basis: StarkBasis,
    fields: Sequence[float] | FloatArray,
    *,
    workers: int | None = None,
    cache: RadialCache | None = None,
    operators: StarkOperators | None = None,
) -> StarkMap:
    """Diagonalize ``basis`` at every field and follow the adiabatic tracks.

    Field points are diagonalized ``workers`` at a time on a thread pool;
    tracking then walks the chunk in grid order, so results do not depend on
    scheduling. Tracks whose best overlap falls below 0.5 are flagged
    diabatic at that field point.
    """
    grid = check_field_grid(fields)
    workers = workers or get_settings().workers
    ops = operators or build_operators(basis, cache)
    size = basis.size
    n_fields = grid.shape[0]

    energies = np.empty((n_fields, size), dtype=np.float64)
    strengths = np.empty((n_fields, size), dtype=np.float64)
    diabatic = np.zeros((n_fields, size), dtype=bool)
    characters = {label: np.empty((n_fields, size)) for label in basis.targets}

    previous: FloatArray | None = None
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for chunk_start in range(0, n_fields, workers):
            chunk = grid[chunk_start : chunk_start + workers]
            results = list(pool.map(lambda f: _diagonalize(ops, float(f)), chunk))
            for offset, (w, V) in enumerate(results):
                k = chunk_start + offset
                if previous is None:
                    V = _resolve_degeneracies(w, V, ops.dipole)
                    order, _ = _match(np.eye(size), V)
                else:
                    order, overlaps = _match(previous, V)
                    diabatic[k] = overlaps < TRACKING_THRESHOLD
                w, V = w[order], V[:, order]
                energies[k] = w
                projected = V.T @ ops.couplings
                strengths[k] = np.sum(projected**2, axis=1) / ops.coupling_norm
                for label, indices in basis.targets.items():
                    characters[label][k] = np.sum(V[list(indices), :] ** 2, axis=0)
                previous = V

    flagged = int(np.count_nonzero(diabatic))
    if flagged:
        logger.warning(
            "diabatic_tracks",
            m=basis.spec.m.value,
            flagged=flagged,
            tracks=int(np.count_nonzero(diabatic.any(axis=0))),
        )
    logger.info("stark_block_solved", m=basis.spec.m.value, size=size, fields=n_fields)
    return StarkMap(
        basis=basis,
        fields=grid,
        energies=energies,
        characters=characters,
        strengths=strengths,
        diabatic=diabatic,
        reference_energy=basis.reference_energy,
    )


def stark_maps(
    bases: Sequence[StarkBasis],
    fields: Sequence[float] | FloatArray,
    *,
    workers: int | None = None,
    cache: RadialCache | None = None,
) -> list[StarkMap]:
    """One map per symmetry block, in the order of ``bases``."""
    return [stark_map(b, fields, workers=workers, cache=cache) for b in bases]


# ---------------------------------------------------------------------------
# Derived quantities
# ---------------------------------------------------------------------------


def second_order_shift(
    basis: StarkBasis, target_index: int, operators: StarkOperators | None = None
) -> float:
    """Quadratic Stark coefficient sum_k D_tk^2 / (E_t - E_k) in GHz/(V/cm)^2."""
    ops = operators or build_operators(basis)
    h0 = np.diag(ops.h0)
    row = ops.dipole[target_index]
    gaps = h0[target_index] - h0
    coupled = np.flatnonzero(row)
    if np.any(np.abs(gaps[coupled]) < _DEGENERACY_GHZ):
        msg = f"state {basis.states[target_index].label} couples to a degenerate partner"
        raise PhysicsDomainError(msg)
    return float(np.sum(row[coupled] ** 2 / gaps[coupled]))


def fit_quadratic_coefficient(smap: StarkMap, track: int) -> float:
    """Leading coefficient of a quadratic fit of E(F) on the map grid, GHz/(V/cm)^2."""
    if smap.fields.shape[0] < 3:
        msg = "a quadratic fit needs at least three field points"
        raise FieldRangeError(msg)
    coefficients = np.polyfit(smap.fields, smap.energies[:, track], 2)
    return float(coefficients[0])


def line_centers(maps: Sequence[StarkMap], target: str) -> FloatArray:
    """Strength-weighted mean of the target's tracks across blocks, MHz vs. reference."""
    if not maps:
        msg = "no Stark maps given"
        raise PhysicsDomainError(msg)
    reference = maps[0].reference_energy
    weighted = np.zeros_like(maps[0].fields)
    total = np.zeros_like(maps[0].fields)
    for smap in maps:
        if not np.array_equal(smap.fields, maps[0].fields):
            msg = "Stark maps must share one field grid"
            raise FieldRangeError(msg)
        tracks = list(smap.target_tracks(target))
        s = smap.strengths[:, tracks]
        weighted += np.sum(s * smap.energies[:, tracks], axis=1)
        total += np.sum(s, axis=1)
    if np.any(total <= 0):
        msg = f"{target} has no excitation strength from the intermediate level"
        raise PhysicsDomainError(msg)
    return np.asarray((weighted / total - reference) * 1000.0, dtype=np.float64)


def manifold_spacing(smap: StarkMap, manifold_n: int, l_min: int = 4) -> FloatArray:
    """Spacing (MHz) between adjacent k-states of the manifold at every field.

    The two m_l = m_j -/+ 1/2 fans of one block nearly coincide, so the sorted
    levels come in close pairs. Only the upper half of the sorted gaps (the
    pair-to-pair distance) enters the median.
    """
    tracks = smap.basis.indices_where(n=manifold_n, l_min=l_min)
    if len(tracks) < 2:
        msg = f"basis holds fewer than two n={manifold_n}, l>={l_min} states"
        raise PhysicsDomainError(msg)
    fan = np.sort(smap.energies[:, tracks], axis=1)
    gaps = np.sort(np.diff(fan, axis=1), axis=1)
    spacing = np.median(gaps[:, gaps.shape[1] // 2 :], axis=1) * 1000.0
    return np.asarray(spacing, dtype=np.float64)


def residual_field_bound(smap: StarkMap, resolution_mhz: float, manifold_n: int = 40) -> float:
    """Largest field whose manifold splitting stays below ``resolution_mhz``.

    The map must start at zero field and increase; the spacing curve is made
    monotone before it is inverted by linear interpolation.
    """
    if resolution_mhz <= 0:
        msg = f"frequency resolution must be positive, got {resolution_mhz}"
        raise ResolutionError(msg)
    if smap.fields[0] != 0.0 or smap.fields.shape[0] < 2 or smap.fields[-1] <= 0:
        msg = "residual-field bound needs an increasing field grid starting at 0 V/cm"
        raise FieldRangeError(msg)
    spacing = np.maximum.accumulate(manifold_spacing(smap, manifold_n))
    if resolution_mhz > spacing[-1]:
        msg = (
            f"resolution {resolution_mhz} MHz exceeds the manifold splitting "
            f"{spacing[-1]:.3g} MHz at the top of the map"
        )
        raise FieldRangeError(msg)
    bound = float(np.interp(resolution_mhz, spacing, smap.fields))
    logger.info("residual_field_bound", resolution_mhz=resolution_mhz, bound_v_per_cm=bound)
    return bound
