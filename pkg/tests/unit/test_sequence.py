# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

from __future__ import annotations

import math

import numpy as np
import pytest

from rydspec.errors import CalibrationError, MOTExtinctionError, PhysicsDomainError
from rydspec.sequence import (
    SAMPLE_STEP_US,
    DetectionSettings,
    RydbergPopulation,
    Species,
    annotate_features,
    crossing_time,
    depletion_curve,
    detection_trace,
    field_ramp,
    integrate_rydberg_signal,
    ionization_threshold,
    ionization_rate_from_depletion,
    mcp_calibration,
    peak_field,
    settle_time,
)
from tests.conftest import make_ramp

# -- Field ramp ---------------------------------------------------------------


class TestFieldRamp:
    @pytest.mark.parametrize("damping", [0.6, 1.0, 1.5])
    def test_rise_time(self, damping: float) -> None:
        ramp = make_ramp(damping=damping)
        t10 = crossing_time(ramp, 0.1 * ramp.target)
        t90 = crossing_time(ramp, 0.9 * ramp.target)
        assert t10 is not None
        assert t90 is not None
        assert t90 - t10 == pytest.approx(ramp.rise_time_us, rel=1e-6)

    def test_zero_before_trigger(self) -> None:
        ramp = make_ramp(switch_delay_us=10.0)
        assert field_ramp([-5.0, 0.0, 10.0], ramp).tolist() == [0.0, 0.0, 0.0]
        assert field_ramp(60.0, ramp)[0] > 0.0

    def test_overshoot(self) -> None:
        ramp = make_ramp()
        expected = 300.0 * (1.0 + math.exp(-0.6 * math.pi / 0.8))
        assert peak_field(ramp) == pytest.approx(expected)
        samples = field_ramp(np.linspace(0.0, 500.0, 5001), ramp)
        assert samples.max() == pytest.approx(expected, rel=1e-4)

    def test_overdamped_peak_is_target(self) -> None:
        assert peak_field(make_ramp(damping=2.0)) == 300.0

    def test_crossing_above_target_during_overshoot(self) -> None:
        ramp = make_ramp()
        assert crossing_time(ramp, 310.0) is not None
        assert crossing_time(ramp, 340.0) is None
        assert crossing_time(make_ramp(damping=1.0), 300.0) is None

    def test_crossing_of_zero_level(self) -> None:
        assert crossing_time(make_ramp(switch_delay_us=3.0), 0.0) == 3.0

    def test_crossing_matches_field(self) -> None:
        ramp = make_ramp(switch_delay_us=2.0)
        t = crossing_time(ramp, 125.0)
        assert t is not None
        assert field_ramp(t, ramp)[0] == pytest.approx(125.0, rel=1e-6)

    @pytest.mark.parametrize(
        "kwargs",
        [{"target": 0.0}, {"rise_time_us": -1.0}, {"damping": 0.0}, {"switch_delay_us": -1.0}],
    )
    def test_validation(self, kwargs: dict[str, float]) -> None:
        with pytest.raises(PhysicsDomainError):
            make_ramp(**kwargs)


class TestIonizationThreshold:
    def test_n40(self) -> None:
        assert ionization_threshold(40.0) == pytest.approx(125.5, abs=0.1)

    def test_scales_as_inverse_fourth_power(self) -> None:
        assert ionization_threshold(20.0) == pytest.approx(16.0 * ionization_threshold(40.0))

    def test_rejects_non_positive(self) -> None:
        with pytest.raises(PhysicsDomainError):
            ionization_threshold(0.0)


# -- Detection timeline -------------------------------------------------------

RYDBERG_41D = RydbergPopulation(label="41D5/2", n_star=39.65, count=100.0)


class TestDetectionTrace:
    def test_trace_integral_equals_counts(self) -> None:
        settings = DetectionSettings(background_count=20.0, prompt_ions=5.0)
        timeline = detection_trace([RYDBERG_41D], make_ramp(), settings)
        total = float(np.sum(timeline.signal) * SAMPLE_STEP_US)
        assert total == pytest.approx(125.0, rel=1e-6)
        assert timeline.detected_count == pytest.approx(125.0)

    def test_grid(self) -> None:
        timeline = detection_trace([RYDBERG_41D], make_ramp())
        assert timeline.time_us[0] == 0.0
        assert timeline.time_us[-1] == pytest.approx(300.0)
        assert np.diff(timeline.time_us) == pytest.approx(SAMPLE_STEP_US)
        assert timeline.field_trace[timeline.time_us < 100.0].max() == 0.0

    def test_event_order_and_species(self) -> None:
        settings = DetectionSettings(background_count=1.0, prompt_ions=1.0)
        timeline = detection_trace([RYDBERG_41D], make_ramp(), settings)
        assert [e.species for e in timeline.events] == [
            Species.BACKGROUND,
            Species.PROMPT_ION,
            Species.RYDBERG,
        ]

    def test_rydberg_arrives_after_crossing(self) -> None:
        ramp = make_ramp(flight_time_us=2.0)
        timeline = detection_trace([RYDBERG_41D], ramp)
        (event,) = timeline.events
        crossing = crossing_time(ramp, ionization_threshold(RYDBERG_41D.n_star))
        assert crossing is not None
        assert event.time_us == pytest.approx(100.0 + crossing + 2.0)
        assert timeline.rydberg_peak_time() == pytest.approx(event.time_us)

    def test_unreachable_level_is_undetected(self) -> None:
        deep = RydbergPopulation(label="15D5/2", n_star=13.65, count=50.0)
        timeline = detection_trace([RYDBERG_41D, deep], make_ramp())
        (missed,) = timeline.undetected
        assert missed.label == "15D5/2"
        assert missed.time_us is None
        assert timeline.detected_count == pytest.approx(100.0)

    def test_calibration_is_undone_by_integration(self) -> None:
        settings = DetectionSettings(calibration=2.5)
        timeline = detection_trace([RYDBERG_41D], make_ramp(), settings)
        assert integrate_rydberg_signal(timeline) == pytest.approx(100.0, rel=1e-6)
        assert float(np.sum(timeline.signal) * SAMPLE_STEP_US) == pytest.approx(40.0)

    def test_empty_window(self) -> None:
        timeline = detection_trace([RYDBERG_41D], make_ramp())
        with pytest.raises(PhysicsDomainError, match="empty integration window"):
            integrate_rydberg_signal(timeline, (150.0, 150.0))

    def test_seeded_noise_is_reproducible(self) -> None:
        def run(seed: int) -> np.ndarray:
            settings = DetectionSettings(noise_sigma=0.1, seed=seed)
            return detection_trace([RYDBERG_41D], make_ramp(), settings).signal

        assert np.array_equal(run(7), run(7))
        assert not np.array_equal(run(7), run(8))

    def test_negative_population(self) -> None:
        bad = RydbergPopulation(label="41D5/2", n_star=39.65, count=-1.0)
        with pytest.raises(PhysicsDomainError):
            detection_trace([bad], make_ramp())

    def test_features(self) -> None:
        settings = DetectionSettings(background_count=1.0, prompt_ions=1.0)
        timeline = detection_trace([RYDBERG_41D], make_ramp(), settings)
        features = annotate_features(timeline)
        assert [f["feature"] for f in features] == ["a", "b", "c"]
        assert features[1]["t_us"] == pytest.approx(100.0)
        lag = features[2]["lag_us"]
        assert isinstance(lag, float)
        assert 30.0 < lag < 50.0

    @pytest.mark.parametrize("damping", [0.6, 1.0, 1.5])
    def test_slower_ramp_delays_rydberg_peak(self, damping: float) -> None:
        peaks = []
        for rise in (30.0, 55.0, 80.0):
            ramp = make_ramp(rise_time_us=rise, damping=damping)
            peak = detection_trace([RYDBERG_41D], ramp).rydberg_peak_time()
            assert peak is not None
            peaks.append(peak)
        assert peaks[0] < peaks[1] < peaks[2]


# -- MCP calibration ----------------------------------------------------------


class TestMCPCalibration:
    def test_steady_state(self) -> None:
        cal = mcp_calibration(1e6, 1.0, 1e5, ion_signal=50.0)
        assert cal.steady_state == pytest.approx(9e5)
        assert cal.depletion == pytest.approx(1e5)
        assert cal.atoms_per_signal == pytest.approx(2000.0)

    def test_extinction(self) -> None:
        with pytest.raises(MOTExtinctionError, match="extinct"):
            mcp_calibration(1e5, 1.0, 1e5, ion_signal=1.0)

    def test_extinction_is_a_calibration_error(self) -> None:
        with pytest.raises(CalibrationError):
            mcp_calibration(1e5, 1.0, 2e5, ion_signal=1.0)

    @pytest.mark.parametrize(
        ("loading", "lifetime", "rate", "signal"),
        [(0.0, 1.0, 1.0, 1.0), (1e6, 0.0, 1.0, 1.0), (1e6, 1.0, 0.0, 1.0), (1e6, 1.0, 1.0, 0.0)],
    )
    def test_invalid_inputs(
        self, loading: float, lifetime: float, rate: float, signal: float
    ) -> None:
        with pytest.raises(CalibrationError):
            mcp_calibration(loading, lifetime, rate, signal)

    def test_rate_from_depletion(self) -> None:
        assert ionization_rate_from_depletion(1e5, 2.0) == pytest.approx(5e4)
        with pytest.raises(CalibrationError):
            ionization_rate_from_depletion(-1.0, 2.0)


class TestDepletion:
    def test_curve_relaxes_to_steady_state(self) -> None:
        t = np.linspace(0.0, 10.0, 101)
        n = depletion_curve(1e6, 1.0, 1e5, t)
        assert n[0] == pytest.approx(1e6)
        assert n[-1] == pytest.approx(9e5, rel=1e-4)
        assert np.all(np.diff(n) <= 0.0)

    def test_settle_time(self) -> None:
        assert settle_time(1e6, 2.0, 1e5) == pytest.approx(2.0 * math.log(20.0), rel=1e-3)

    def test_settle_fraction_range(self) -> None:
        with pytest.raises(CalibrationError):
            settle_time(1e6, 1.0, 1e5, fraction=1.0)
