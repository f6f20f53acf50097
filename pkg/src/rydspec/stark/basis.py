# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Stark bases: fine-structure |n l j m_j> or hyperfine product |n l j m_j; m_I>."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
import structlog
from numpy.typing import NDArray

from rydspec.angular import AngularArg, HalfInt
from rydspec.config import get_settings
from rydspec.errors import BasisCapacityError, QuantumNumberError
from rydspec.radial import RadialGrid
from rydspec.structure import (
    AtomData,
    RydbergLevel,
    level_energy,
    parse_label,
    rydberg_level,
)

logger = structlog.get_logger(__name__)

DEFAULT_TARGETS = ("41D5/2", "41D3/2")


@dataclass(frozen=True, slots=True)
class BasisSpec:
    """Which states enter one field-along-z symmetry block.

    ``m`` is m_j for fine-structure blocks and m_F for hyperfine blocks.
    """

    center_n: int
    m: HalfInt
    delta_n: int = 4
    l_max: int | None = None
    include_hyperfine: bool = False
    hyperfine_window_ghz: float = 2.0
    targets: tuple[str, ...] = DEFAULT_TARGETS
    intermediate: str = "5P3/2"
    intermediate_f: HalfInt = HalfInt(6)

    def with_m(self, m: AngularArg) -> BasisSpec:
        return replace(self, m=HalfInt.of(m))

    def n_range(self) -> range:
        return range(max(1, self.center_n - self.delta_n), self.center_n + self.delta_n + 1)


@dataclass(frozen=True, slots=True)
class BasisState:
    level: RydbergLevel
    m_j: HalfInt
    m_i: HalfInt | None = None

    @property
    def label(self) -> str:
        if self.m_i is None:
            return f"{self.level.label} mj={self.m_j}"
        return f"{self.level.label} mj={self.m_j} mI={self.m_i}"


@dataclass(slots=True)
class StarkBasis:
    """Materialized basis with zero-field energies (GHz) and a shared radial grid."""

    spec: BasisSpec
    data: AtomData
    states: tuple[BasisState, ...]
    energies: NDArray[np.float64]
    grid: RadialGrid
    targets: dict[str, tuple[int, ...]] = field(default_factory=dict)
    target_levels: dict[str, RydbergLevel] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.states)

    @property
    def size(self) -> int:
        return len(self.states)

    @property
    def reference_energy(self) -> float:
        """Zero-field energy of the first target, the origin of emitted maps."""
        if not self.spec.targets:
            return 0.0
        first = self.target_levels[self.spec.targets[0]]
        return level_energy(first, self.data)

    def indices_where(self, *, n: int | None = None, l_min: int = 0) -> list[int]:
        return [
            i
            for i, s in enumerate(self.states)
            if (n is None or s.level.n == n) and s.level.l >= l_min
        ]


def _partners(j: HalfInt, m: HalfInt, spin: HalfInt | None) -> list[HalfInt | None]:
    """m_I values compatible with |m_j| <= j, or [None] for fine-structure blocks."""
    if spin is None:
        return [None] if abs(m.twice_value) <= j.twice_value else []
    out: list[HalfInt | None] = []
    for m_i in spin.projections():
        if abs(m.twice_value - m_i.twice_value) <= j.twice_value:
            out.append(m_i)
    return out


def build_basis(spec: BasisSpec, data: AtomData, points: int | None = None) -> StarkBasis:
    """Enumerate states ordered by (n, l, j, m_I) and check the capacity budget."""
    spin = data.nuclear_spin if spec.include_hyperfine else None
    if spin is None and spec.m.is_integer:
        msg = f"fine-structure block needs half-integer m_j, got {spec.m}"
        raise QuantumNumberError(msg)
    if spin is not None and (spec.m.twice_value - spin.twice_value) % 2 == 0:
        msg = f"m_F={spec.m} is incompatible with I={spin} for a spin-1/2 electron"
        raise QuantumNumberError(msg)

    # Count first so an oversized request fails before any work.
    plan: list[tuple[int, int, HalfInt, list[HalfInt | None]]] = []
    for n in spec.n_range():
        l_top = n - 1 if spec.l_max is None else min(spec.l_max, n - 1)
        for l in range(l_top + 1):
            for twice_j in (2 * l - 1, 2 * l + 1):
                if twice_j < 1:
                    continue
                j = HalfInt(twice_j)
                partners = _partners(j, spec.m, spin)
                if partners:
                    plan.append((n, l, j, partners))
    size = sum(len(p[3]) for p in plan)
    budget = get_settings().max_basis_size
    if size == 0:
        msg = f"basis for {spec} is empty"
        raise QuantumNumberError(msg)
    if size > budget:
        msg = f"basis of {size} states exceeds max_basis_size={budget}"
        raise BasisCapacityError(msg)

    states: list[BasisState] = []
    for n, l, j, partners in plan:
        level = rydberg_level(data, n, l, j)
        for m_i in partners:
            m_j = spec.m if m_i is None else HalfInt(spec.m.twice_value - m_i.twice_value)
            states.append(BasisState(level=level, m_j=m_j, m_i=m_i))
    energies = np.array([level_energy(s.level, data) for s in states], dtype=np.float64)

    targets: dict[str, tuple[int, ...]] = {}
    target_levels: dict[str, RydbergLevel] = {}
    for label in spec.targets:
        n, l, j = parse_label(label)
        if n is None or n not in spec.n_range() or (spec.l_max is not None and l > spec.l_max):
            msg = f"target {label} lies outside the basis window"
            raise QuantumNumberError(msg)
        target_levels[label] = rydberg_level(data, n, l, j)
        key = (n, l, j.twice_value)
        targets[label] = tuple(i for i, s in enumerate(states) if s.level.key == key)

    intermediate = data.level(spec.intermediate)
    grid_levels = [s.level for s in states]
    grid_levels.append(rydberg_level(data, intermediate.n, intermediate.l, intermediate.j))
    grid = RadialGrid.for_levels(*grid_levels, points=points)

    logger.info(
        "basis_built",
        m=spec.m.value,
        hyperfine=spec.include_hyperfine,
        size=len(states),
        n_min=spec.n_range().start,
        n_max=spec.n_range().stop - 1,
    )
    return StarkBasis(
        spec=spec,
        data=data,
        states=tuple(states),
        energies=energies,
        grid=grid,
        targets=targets,
        target_levels=target_levels,
    )
