# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Hyperfine-resolved Stark lines reached from one intermediate F' level."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, replace

import numpy as np
import structlog
from numpy.typing import NDArray

from rydspec.angular import HalfInt, clebsch_gordan
from rydspec.errors import PhysicsDomainError
from rydspec.radial import RadialCache
from rydspec.stark.basis import BasisSpec, StarkBasis, build_basis
from rydspec.stark.hamiltonian import StarkOperators, build_operators
from rydspec.stark.maps import check_field_grid
from rydspec.structure import AtomData, allowed_f

logger = structlog.get_logger(__name__)

DEFAULT_STRENGTH_FLOOR = 1e-3

FloatArray = NDArray[np.float64]


@dataclass(frozen=True, slots=True)
class HyperfineLine:
    field: float  # V/cm
    label: str  # dominant fine-structure level
    f: HalfInt  # dominant coupled F within that level
    m_f: HalfInt
    energy: float  # GHz
    strength: float  # (e a0)^2
    character: float  # weight of the dominant level


@dataclass(slots=True)
class HyperfineLineSet:
    field: float
    lines: list[HyperfineLine]

    def for_label(self, label: str) -> list[HyperfineLine]:
        return [line for line in self.lines if line.label == label]


def _f_projectors(basis: StarkBasis) -> dict[str, dict[HalfInt, FloatArray]]:
    """Coupled |j I F m_F> vectors of every target level in the product basis."""
    spin = basis.data.nuclear_spin
    m_f = basis.spec.m
    out: dict[str, dict[HalfInt, FloatArray]] = {}
    for label, indices in basis.targets.items():
        level = basis.target_levels[label]
        vectors: dict[HalfInt, FloatArray] = {}
        for F in allowed_f(spin, level.j):
            if abs(m_f.twice_value) > F.twice_value:
                continue
            vec = np.zeros(basis.size)
            for i in indices:
                state = basis.states[i]
                assert state.m_i is not None
                vec[i] = clebsch_gordan(level.j, state.m_j, spin, state.m_i, F, m_f)
            vectors[F] = vec
        out[label] = vectors
    return out


def _block_lines(
    basis: StarkBasis,
    ops: StarkOperators,
    projectors: dict[str, dict[HalfInt, FloatArray]],
    fld: float,
) -> list[HyperfineLine]:
    w, V = np.linalg.eigh(ops.hamiltonian(fld))
    strengths = np.sum((V.T @ ops.couplings) ** 2, axis=1) / ops.coupling_norm
    labels = list(basis.targets)
    weights = np.array([np.sum(V[list(basis.targets[lbl]), :] ** 2, axis=0) for lbl in labels])

    lines: list[HyperfineLine] = []
    for k in range(basis.size):
        dominant = int(np.argmax(weights[:, k]))
        character = float(weights[dominant, k])
        if character < 0.5:
            continue
        label = labels[dominant]
        f_weights = {F: float((vec @ V[:, k]) ** 2) for F, vec in projectors[label].items()}
        lines.append(
            HyperfineLine(
                field=fld,
                label=label,
                f=max(f_weights, key=lambda F: f_weights[F]),
                m_f=basis.spec.m,
                energy=float(w[k]),
                strength=float(strengths[k]),
                character=character,
            )
        )
    return lines


def reachable_m_f(intermediate_f: HalfInt) -> list[HalfInt]:
    """m_F values reachable from |F' m_F'> with q in {-1, 0, +1}."""
    top = intermediate_f.twice_value + 2
    return [HalfInt(t) for t in range(-top, top + 1, 2)]


def hyperfine_stark_lines(
    spec: BasisSpec,
    data: AtomData,
    fields: Sequence[float] | FloatArray,
    *,
    cache: RadialCache | None = None,
    points: int | None = None,
) -> list[HyperfineLineSet]:
    """Target-level lines at each field over every reachable m_F block.

    ``spec.m`` is ignored; one hyperfine block is built per reachable m_F.
    Lines are returned for eigenstates whose dominant character is a target.
    """
    grid = check_field_grid(fields)
    hf_spec = replace(spec, include_hyperfine=True)
    if not hf_spec.targets:
        msg = "hyperfine lines need at least one target level"
        raise PhysicsDomainError(msg)

    sets = [HyperfineLineSet(field=float(f), lines=[]) for f in grid]
    for m_f in reachable_m_f(hf_spec.intermediate_f):
        basis = build_basis(hf_spec.with_m(m_f), data, points=points)
        ops = build_operators(basis, cache)
        projectors = _f_projectors(basis)
        for line_set in sets:
            line_set.lines.extend(_block_lines(basis, ops, projectors, line_set.field))
    for line_set in sets:
        line_set.lines.sort(key=lambda line: (line.label, line.energy, line.m_f))
    logger.info("hyperfine_lines_computed", fields=len(sets), targets=list(hf_spec.targets))
    return sets


def count_components(
    line_set: HyperfineLineSet,
    label: str,
    resolution_mhz: float = 1.0,
    floor: float = DEFAULT_STRENGTH_FLOOR,
) -> list[list[HyperfineLine]]:
    """Group visible lines of ``label`` whose neighbors lie within ``resolution_mhz``.

    Lines weaker than ``floor`` times the strongest line of the label are
    dropped before grouping.
    """
    lines = line_set.for_label(label)
    if not lines:
        return []
    strongest = max(line.strength for line in lines)
    visible = sorted(
        (line for line in lines if line.strength >= floor * strongest),
        key=lambda line: line.energy,
    )
    groups: list[list[HyperfineLine]] = [[visible[0]]]
    for line in visible[1:]:
        if (line.energy - groups[-1][-1].energy) * 1000.0 > resolution_mhz:
            groups.append([line])
        else:
            groups[-1].append(line)
    return groups
