# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

from __future__ import annotations

import pytest

from rydspec.angular import HalfInt
from rydspec.errors import PhysicsDomainError, QuantumNumberError
from rydspec.radial import (
    CORE_CUTOFF_A0,
    RadialCache,
    RadialGrid,
    expectation_r,
    inner_turning_point,
    outer_radius,
    radial_dipole,
    solve_radial,
)
from rydspec.structure import AtomData, RydbergLevel, rydberg_level
from tests.conftest import make_hydrogen_level


class TestRadialGrid:
    def test_grid_spans_largest_level(self) -> None:
        grid = RadialGrid.for_levels(make_hydrogen_level(10, 2), make_hydrogen_level(20, 1))
        assert (grid.step * grid.points) ** 2 == pytest.approx(outer_radius(20.0))

    def test_too_few_points(self) -> None:
        with pytest.raises(PhysicsDomainError, match="cannot resolve"):
            RadialGrid.for_levels(make_hydrogen_level(40, 2), points=500)

    def test_needs_a_level(self) -> None:
        with pytest.raises(PhysicsDomainError):
            RadialGrid.for_levels()

    def test_refined(self) -> None:
        grid = RadialGrid(step=0.01, points=1000)
        fine = grid.refined()
        assert fine.step == pytest.approx(0.005)
        assert fine.points == 2000

    def test_core_cutoff_for_defect_channels(self, rb87: AtomData) -> None:
        level = rydberg_level(rb87, 41, 2, 2.5)
        grid = RadialGrid.for_levels(level)
        assert (grid.step * grid.inner_index(level)) ** 2 >= CORE_CUTOFF_A0

    def test_hydrogenic_s_starts_at_two_steps(self) -> None:
        level = make_hydrogen_level(5, 0)
        assert RadialGrid.for_levels(level).inner_index(level) == 2


class TestTurningPoint:
    def test_s_state_has_none(self) -> None:
        assert inner_turning_point(10.0, 0) is None

    def test_p_state(self) -> None:
        r_tp = inner_turning_point(10.0, 1)
        assert r_tp is not None
        assert 0.0 < r_tp < 1.5


class TestHydrogen:
    def test_1s_2p_dipole(self) -> None:
        s1, p2 = make_hydrogen_level(1, 0), make_hydrogen_level(2, 1)
        d = radial_dipole(s1, p2, cache=RadialCache())
        assert abs(d) == pytest.approx(1.2902, abs=1e-3)

    def test_2p_mean_radius(self) -> None:
        solution = solve_radial(make_hydrogen_level(2, 1), cache=RadialCache())
        assert expectation_r(solution) == pytest.approx(5.0, rel=1e-3)

    @pytest.mark.parametrize(("n", "l"), [(3, 0), (5, 2), (10, 4), (10, 9)])
    def test_node_count(self, n: int, l: int) -> None:
        solution = solve_radial(make_hydrogen_level(n, l), cache=RadialCache())
        assert solution.nodes == n - l - 1

    def test_normalized(self) -> None:
        solution = solve_radial(make_hydrogen_level(10, 3), cache=RadialCache())
        assert solution.norm_residual < 1e-10
        assert expectation_r(solution, power=0) == pytest.approx(1.0)

    def test_mean_radius_formula(self) -> None:
        n, l = 10, 3
        solution = solve_radial(make_hydrogen_level(n, l), cache=RadialCache())
        assert expectation_r(solution) == pytest.approx((3 * n * n - l * (l + 1)) / 2, rel=1e-3)


class TestRadialDipole:
    def test_symmetric(self, rb87: AtomData) -> None:
        a = rydberg_level(rb87, 41, 2, 2.5)
        b = rydberg_level(rb87, 40, 3, 3.5)
        grid = RadialGrid.for_levels(a, b)
        cache = RadialCache()
        assert radial_dipole(a, b, grid, cache) == radial_dipole(b, a, grid, cache)

    def test_requires_delta_l_one(self) -> None:
        with pytest.raises(QuantumNumberError, match="l_a - l_b"):
            radial_dipole(make_hydrogen_level(10, 2), make_hydrogen_level(10, 4))

    def test_n_star_not_above_l(self) -> None:
        bad = RydbergLevel(n=3, l=2, j=HalfInt(5), n_star=1.5)
        with pytest.raises(QuantumNumberError):
            solve_radial(bad, RadialGrid(step=0.01, points=1000), RadialCache())

    def test_grid_halving_converges(self) -> None:
        a, b = make_hydrogen_level(10, 2), make_hydrogen_level(10, 3)
        grid = RadialGrid.for_levels(a, b)
        coarse = radial_dipole(a, b, grid, RadialCache())
        fine = radial_dipole(a, b, grid.refined(), RadialCache())
        assert abs(fine - coarse) < 1e-5 * abs(fine)


class TestRadialCache:
    def test_hits_and_misses(self) -> None:
        cache = RadialCache()
        level = make_hydrogen_level(8, 2)
        grid = RadialGrid.for_levels(level)
        first = cache.solution(level, grid)
        second = cache.solution(level, grid)
        assert first is second
        assert (cache.misses, cache.hits) == (1, 1)

    def test_dipole_cached_in_both_orders(self) -> None:
        cache = RadialCache()
        a, b = make_hydrogen_level(8, 2), make_hydrogen_level(8, 3)
        grid = RadialGrid.for_levels(a, b)
        cache.dipole(a, b, grid)
        hits = cache.hits
        cache.dipole(b, a, grid)
        assert cache.hits == hits + 1

    def test_clear(self) -> None:
        cache = RadialCache()
        level = make_hydrogen_level(8, 2)
        cache.solution(level, RadialGrid.for_levels(level))
        cache.clear()
        assert (cache.misses, cache.hits) == (0, 0)
