# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

from __future__ import annotations

import numpy as np
import pytest

from rydspec.radial import RadialCache
from rydspec.stark import (
    HyperfineLineSet,
    StarkBasis,
    StarkMap,
    build_basis,
    build_operators,
    count_components,
    fit_quadratic_coefficient,
    hyperfine_stark_lines,
    manifold_spacing,
    residual_field_bound,
    second_order_shift,
    stark_map,
)
from rydspec.structure import AtomData
from tests.conftest import make_basis_spec

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def full_l_block(rb87: AtomData) -> StarkBasis:
    """n = 40..42 with every l, m_j = 1/2."""
    return build_basis(make_basis_spec(l_max=None), rb87)


# -- Quadratic regime ---------------------------------------------------------


class TestQuadraticStarkShift:
    @pytest.mark.parametrize("label", ["41D5/2", "41D3/2"])
    def test_fit_matches_perturbation_theory(self, full_l_block: StarkBasis, label: str) -> None:
        cache = RadialCache()
        ops = build_operators(full_l_block, cache)
        smap = stark_map(full_l_block, np.linspace(0.0, 0.1, 11), operators=ops)
        (track,) = smap.target_tracks(label)
        fitted = fit_quadratic_coefficient(smap, track)
        predicted = second_order_shift(full_l_block, track, ops)
        assert fitted == pytest.approx(predicted, rel=1e-2)

    def test_target_stays_adiabatic(self, full_l_block: StarkBasis) -> None:
        smap = stark_map(full_l_block, np.linspace(0.0, 0.5, 11), cache=RadialCache())
        (track,) = smap.target_tracks("41D5/2")
        assert np.all(smap.characters["41D5/2"][:, track] > 0.99)
        assert not smap.diabatic[:, track].any()


# -- Manifold fan -------------------------------------------------------------


class TestResidualField:
    @pytest.fixture(scope="class")
    def low_field_map(self, full_l_block: StarkBasis) -> StarkMap:
        return stark_map(full_l_block, np.linspace(0.0, 0.1, 21), cache=RadialCache())

    def test_manifold_degenerate_at_zero_field(self, low_field_map: StarkMap) -> None:
        assert manifold_spacing(low_field_map, 40)[0] == pytest.approx(0.0, abs=1e-3)

    def test_spacing_grows_linearly(self, low_field_map: StarkMap) -> None:
        spacing = manifold_spacing(low_field_map, 40)
        assert spacing[-1] == pytest.approx(2.0 * spacing[10], rel=0.05)

    def test_spacing_is_adjacent_k_states(self, low_field_map: StarkMap) -> None:
        # about 160 MHz per V/cm at n = 40, far above the close-pair gaps
        slope = manifold_spacing(low_field_map, 40)[-1] / 0.1
        assert 140.0 < slope < 180.0

    def test_bound_for_laser_resolution(self, low_field_map: StarkMap) -> None:
        bound = residual_field_bound(low_field_map, 2.2)
        assert 0.012 < bound < 0.016

    def test_bound_doubles_with_resolution(self, low_field_map: StarkMap) -> None:
        single = residual_field_bound(low_field_map, 2.2)
        assert residual_field_bound(low_field_map, 4.4) == pytest.approx(2.0 * single, rel=0.05)


# -- Hyperfine structure ------------------------------------------------------


class TestHyperfineComponents:
    @pytest.fixture(scope="class")
    def weak_field_lines(self, rb87: AtomData) -> HyperfineLineSet:
        spec = make_basis_spec(include_hyperfine=True, m=0)
        (line_set,) = hyperfine_stark_lines(spec, rb87, [0.001], cache=RadialCache())
        return line_set

    def test_d52_shows_three_components(self, weak_field_lines: HyperfineLineSet) -> None:
        groups = count_components(weak_field_lines, "41D5/2", resolution_mhz=0.001)
        assert len(groups) == 3
        assert {line.f.value for group in groups for line in group} == {2, 3, 4}

    def test_d32_shows_two_components(self, weak_field_lines: HyperfineLineSet) -> None:
        groups = count_components(weak_field_lines, "41D3/2", resolution_mhz=0.001)
        assert len(groups) == 2

    def test_laser_resolution_merges_components(self, weak_field_lines: HyperfineLineSet) -> None:
        assert len(count_components(weak_field_lines, "41D5/2", resolution_mhz=1.0)) == 1

    def test_without_hyperfine_constants_one_component(self, rb87: AtomData) -> None:
        spec = make_basis_spec(include_hyperfine=True, m=0)
        data = rb87.with_hyperfine_scale(0.0)
        (line_set,) = hyperfine_stark_lines(spec, data, [0.001], cache=RadialCache())
        assert len(count_components(line_set, "41D5/2", resolution_mhz=0.001)) == 1
