# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Radial wavefunctions in the Coulomb approximation.

Usage::

    grid = RadialGrid.for_levels(a, b)
    d = radial_dipole(a, b, grid)  # e a0

The radial equation for u(r) = r R(r) is integrated on the scaled coordinate
x = sqrt(r), where with u = x^(1/2) y it reads::

    y'' = g(x) y,   g(x) = 8 x^2 (V - E) + (4 l(l+1) + 3/4) / x^2

with V = -1/r and E = -1/(2 n*^2) in atomic units. Integration runs inward
(Numerov) from r_out = 2 n*(n* + 15) with a WKB-seeded decaying tail. Every
solution on a grid shares the same step and is anchored at x = 0, so products
of two solutions line up index by index.

Inner cutoff:
  * channels with a nonzero quantum defect start at r = 0.05 a0;
  * hydrogenic channels start where the regular solution has decayed by 1e-8
    relative to the inner turning point, or two grid steps from the origin.
In the inner classically forbidden region the inward solution picks up the
irregular Coulomb function, which grows toward the origin. When |u| has an
interior minimum there, everything inside it is zeroed and the solution is
flagged with ``truncated_at``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np
import structlog
from numba import njit
from numpy.typing import NDArray
from scipy.integrate import trapezoid

from rydspec.config import get_settings
from rydspec.errors import PhysicsDomainError, QuantumNumberError
from rydspec.structure.levels import RydbergLevel

logger = structlog.get_logger(__name__)

CORE_CUTOFF_A0 = 0.05
_HYDROGENIC_DECAY = 1e-8
_NSTAR_QUANTUM = 1e-9
_NODE_THRESHOLD = 1e-8
_RESCALE_LIMIT = 1e200

FloatArray = NDArray[np.float64]


@njit(cache=True)
def _numerov_inward(g: FloatArray, y: FloatArray, h2: float) -> None:  # pragma: no cover
    n = g.shape[0]
    for i in range(n - 2, 0, -1):
        y[i - 1] = (
            2.0 * (1.0 + 5.0 * h2 * g[i] / 12.0) * y[i] - (1.0 - h2 * g[i + 1] / 12.0) * y[i + 1]
        ) / (1.0 - h2 * g[i - 1] / 12.0)
        if abs(y[i - 1]) > _RESCALE_LIMIT:
            for k in range(i - 1, n):
                y[k] /= _RESCALE_LIMIT


# ---------------------------------------------------------------------------
# Data classes
# ---------------------------------------------------------------------------


def outer_radius(n_star: float) -> float:
    return 2.0 * n_star * (n_star + 15.0)


def inner_turning_point(n_star: float, l: int) -> float | None:
    """Inner classical turning point of u in a0, None for l = 0."""
    if l == 0:
        return None
    disc = 1.0 - l * (l + 1) / n_star**2
    if disc <= 0:
        return None
    return n_star**2 * (1.0 - math.sqrt(disc))


def is_hydrogenic(level: RydbergLevel) -> bool:
    return abs(level.n - level.n_star) < 1e-12


@dataclass(frozen=True, slots=True)
class RadialGrid:
    """Square-root-scaled grid shared by a set of levels."""

    step: float  # in x = sqrt(r / a0)
    points: int

    @classmethod
    def for_levels(cls, *levels: RydbergLevel, points: int | None = None) -> RadialGrid:
        if not levels:
            msg = "a radial grid needs at least one level"
            raise PhysicsDomainError(msg)
        points = points or get_settings().radial_points
        n_max = max(level.n_star for level in levels)
        if points < 20 * n_max:
            msg = f"{points} radial points cannot resolve n* = {n_max:.2f}"
            raise PhysicsDomainError(msg)
        x_max = math.sqrt(outer_radius(n_max))
        return cls(step=x_max / points, points=points)

    def refined(self, factor: int = 2) -> RadialGrid:
        return RadialGrid(step=self.step / factor, points=self.points * factor)

    def outer_index(self, level: RydbergLevel) -> int:
        return math.ceil(math.sqrt(outer_radius(level.n_star)) / self.step)

    def inner_index(self, level: RydbergLevel) -> int:
        h = self.step
        if not is_hydrogenic(level):
            r_in = CORE_CUTOFF_A0
        else:
            r_tp = inner_turning_point(level.n_star, level.l)
            r_in = 0.0
            if r_tp is not None:
                r_in = r_tp * _HYDROGENIC_DECAY ** (1.0 / (level.l + 1))
        return max(2, math.ceil(math.sqrt(r_in) / h))

    @property
    def key(self) -> int:
        return round(self.step * 1e12)


@dataclass(frozen=True, slots=True)
class RadialSolution:
    """Normalized solution sampled at x = step * (start + k)."""

    level: RydbergLevel
    step: float
    start: int
    y: FloatArray
    norm_residual: float
    truncated_at: float | None = None  # a0

    @property
    def stop(self) -> int:
        return self.start + self.y.shape[0]

    @property
    def x(self) -> FloatArray:
        return self.step * np.arange(self.start, self.stop, dtype=np.float64)

    @property
    def r(self) -> FloatArray:
        return self.x**2

    @property
    def u(self) -> FloatArray:
        """Reduced wavefunction u(r) = r R(r)."""
        return np.sqrt(self.x) * self.y

    @property
    def r_in(self) -> float:
        return float((self.step * self.start) ** 2)

    @property
    def r_out(self) -> float:
        return float((self.step * (self.stop - 1)) ** 2)

    @property
    def nodes(self) -> int:
        """Sign changes of u, ignoring samples below 1e-8 of the maximum."""
        u = self.u
        significant = u[np.abs(u) > _NODE_THRESHOLD * np.max(np.abs(u))]
        return int(np.count_nonzero(np.signbit(significant[1:]) != np.signbit(significant[:-1])))


# ---------------------------------------------------------------------------
# Cache
# ---------------------------------------------------------------------------


def _level_key(level: RydbergLevel) -> tuple[int, int]:
    return (round(level.n_star / _NSTAR_QUANTUM), level.l)


class RadialCache:
    """Thread-safe store of solutions and dipole integrals.

    Keys use n* quantized to 1e-9, so fine-structure partners with the same
    defect (all l > 3 channels) share one solution.
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._solutions: dict[tuple[int, int, int], RadialSolution] = {}
        self._dipoles: dict[tuple[int, int, int, int, int], float] = {}
        self.hits = 0
        self.misses = 0

    def solution(self, level: RydbergLevel, grid: RadialGrid) -> RadialSolution:
        key = (*_level_key(level), grid.key)
        with self._lock:
            cached = self._solutions.get(key)
            if cached is not None:
                self.hits += 1
                return cached
            self.misses += 1
        solution = _integrate(level, grid)
        with self._lock:
            return self._solutions.setdefault(key, solution)

    def dipole(self, a: RydbergLevel, b: RydbergLevel, grid: RadialGrid) -> float:
        ka, kb = _level_key(a), _level_key(b)
        if kb < ka:
            a, b, ka, kb = b, a, kb, ka
        key = (*ka, *kb, grid.key)
        with self._lock:
            cached = self._dipoles.get(key)
            if cached is not None:
                self.hits += 1
                return cached
            self.misses += 1
        value = _overlap(self.solution(a, grid), self.solution(b, grid), power=1)
        with self._lock:
            return self._dipoles.setdefault(key, value)

    def clear(self) -> None:
        with self._lock:
            self._solutions.clear()
            self._dipoles.clear()
            self.hits = self.misses = 0


_default_cache = RadialCache()


def default_cache() -> RadialCache:
    return _default_cache


# ---------------------------------------------------------------------------
# Integration
# ---------------------------------------------------------------------------


def _integrate(level: RydbergLevel, grid: RadialGrid) -> RadialSolution:
    if level.n_star <= level.l:
        msg = f"n*={level.n_star:.4f} must exceed l={level.l} for {level.label}"
        raise QuantumNumberError(msg)

    h = grid.step
    start = grid.inner_index(level)
    stop = grid.outer_index(level) + 1
    x = h * np.arange(start, stop, dtype=np.float64)
    ns2 = level.n_star**2
    g = -8.0 + 4.0 * x**2 / ns2 + (4.0 * level.l * (level.l + 1) + 0.75) / x**2

    y = np.zeros_like(x)
    y[-1] = 1e-20
    y[-2] = y[-1] * math.exp(h * math.sqrt(max(g[-1], 0.0)))
    _numerov_inward(g, y, h * h)

    truncated_at = None
    r = x**2
    r_tp = inner_turning_point(level.n_star, level.l)
    if r_tp is not None:
        forbidden = np.flatnonzero(r < r_tp)
        if forbidden.size > 1:
            u_abs = np.abs(np.sqrt(x[forbidden]) * y[forbidden])
            i_min = int(np.argmin(u_abs))
            if i_min > 0:
                cut = int(forbidden[i_min])
                y[:cut] = 0.0
                truncated_at = float(r[cut])
                logger.debug(
                    "radial_truncated",
                    level=level.label,
                    n_star=level.n_star,
                    r_cut=truncated_at,
                )

    norm = 2.0 * trapezoid(x**2 * y**2, x)
    if not np.isfinite(norm) or norm <= 0:
        msg = f"radial integration diverged for {level.label}"
        raise PhysicsDomainError(msg)
    y /= math.sqrt(norm)
    residual = abs(2.0 * trapezoid(x**2 * y**2, x) - 1.0)
    return RadialSolution(
        level=level,
        step=h,
        start=start,
        y=y,
        norm_residual=float(residual),
        truncated_at=truncated_at,
    )


def _overlap(a: RadialSolution, b: RadialSolution, power: int) -> float:
    """2 * integral of x^(2 power + 2) y_a y_b dx over the shared range."""
    lo, hi = max(a.start, b.start), min(a.stop, b.stop)
    if hi - lo < 2:
        return 0.0
    x = a.step * np.arange(lo, hi, dtype=np.float64)
    ya = a.y[lo - a.start : hi - a.start]
    yb = b.y[lo - b.start : hi - b.start]
    return float(2.0 * trapezoid(x ** (2 * power + 2) * ya * yb, x))


def solve_radial(
    level: RydbergLevel, grid: RadialGrid | None = None, cache: RadialCache | None = None
) -> RadialSolution:
    """Normalized Coulomb-approximation solution for ``level``."""
    grid = grid or RadialGrid.for_levels(level)
    return (cache or _default_cache).solution(level, grid)


def radial_dipole(
    a: RydbergLevel,
    b: RydbergLevel,
    grid: RadialGrid | None = None,
    cache: RadialCache | None = None,
) -> float:
    """<a| r |b> in e a0; exactly symmetric in a and b."""
    if abs(a.l - b.l) != 1:
        msg = f"radial dipole needs |l_a - l_b| = 1, got {a.label} and {b.label}"
        raise QuantumNumberError(msg)
    grid = grid or RadialGrid.for_levels(a, b)
    return (cache or _default_cache).dipole(a, b, grid)


def expectation_r(solution: RadialSolution, power: int = 1) -> float:
    """<r^power> in a0^power."""
    return _overlap(solution, solution, power)
