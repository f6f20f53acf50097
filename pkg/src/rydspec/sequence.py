# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Excitation and detection cycle in the time domain.

Timeline (all times in us, t = 0 at the start of the excitation pulse)::

    [0, pulse)            excitation pulse; collision ions arrive as background (a)
    pulse + delay         field ramp starts; ions left in the cloud arrive (b)
    crossing + flight     each Rydberg level arrives once the ramp passes its
                          classical ionization threshold (c)

The ramp is the step response of a second-order low-pass filter whose natural
frequency is calibrated so the 10-90 % rise time equals ``rise_time_us``.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from functools import lru_cache

import numpy as np
import structlog
from numpy.typing import NDArray
from scipy.constants import physical_constants
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from rydspec.errors import CalibrationError, MOTExtinctionError, PhysicsDomainError

logger = structlog.get_logger(__name__)

# Atomic unit of electric field in V/cm.
ATOMIC_FIELD_V_PER_CM = physical_constants["atomic unit of electric field"][0] / 100.0
SAMPLE_STEP_US = 0.1

FloatArray = NDArray[np.float64]


# ---------------------------------------------------------------------------
# Field ramp
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class FieldRamp:
    target: float = 300.0  # V/cm
    rise_time_us: float = 55.0  # 10-90 %
    damping: float = 0.6
    switch_delay_us: float = 0.0
    flight_time_us: float = 0.0

    def __post_init__(self) -> None:
        if not (self.target > 0 and self.rise_time_us > 0 and self.damping > 0):
            msg = "ramp target, rise time and damping must be positive"
            raise PhysicsDomainError(msg)
        if self.switch_delay_us < 0 or self.flight_time_us < 0:
            msg = "switch delay and flight time must be non-negative"
            raise PhysicsDomainError(msg)


def _unit_step(tau: float, zeta: float) -> float:
    """Normalized step response at dimensionless time tau = omega_n t."""
    if tau <= 0:
        return 0.0
    if zeta < 1.0:
        wd = math.sqrt(1.0 - zeta * zeta)
        return 1.0 - math.exp(-zeta * tau) * (
            math.cos(wd * tau) + zeta / wd * math.sin(wd * tau)
        )
    if zeta == 1.0:
        return 1.0 - math.exp(-tau) * (1.0 + tau)
    root = math.sqrt(zeta * zeta - 1.0)
    s1, s2 = -(zeta - root), -(zeta + root)
    return 1.0 - (s2 * math.exp(s1 * tau) - s1 * math.exp(s2 * tau)) / (s2 - s1)


def _first_rise_bound(zeta: float) -> float:
    """Dimensionless time of the first maximum, or a point past 99 % when none."""
    if zeta < 1.0:
        return math.pi / math.sqrt(1.0 - zeta * zeta)
    tau = 1.0
    while _unit_step(tau, zeta) < 0.99:
        tau *= 2.0
    return tau


def _unit_crossing(level: float, zeta: float) -> float:
    bound = _first_rise_bound(zeta)
    return float(brentq(lambda t: _unit_step(t, zeta) - level, 0.0, bound))


@lru_cache(maxsize=64)
def _unit_rise(zeta: float) -> float:
    return _unit_crossing(0.9, zeta) - _unit_crossing(0.1, zeta)


def ramp_natural_frequency(ramp: FieldRamp) -> float:
    """omega_n in rad/us giving the configured 10-90 % rise time."""
    return _unit_rise(ramp.damping) / ramp.rise_time_us


def field_ramp(t: float | FloatArray, ramp: FieldRamp) -> FloatArray:
    """Field (V/cm) at time ``t`` after the ramp trigger; zero before ``switch_delay_us``."""
    omega = ramp_natural_frequency(ramp)
    times = np.atleast_1d(np.asarray(t, dtype=np.float64)) - ramp.switch_delay_us
    values = [ramp.target * _unit_step(float(x) * omega, ramp.damping) for x in times]
    return np.asarray(values, dtype=np.float64)


def peak_field(ramp: FieldRamp) -> float:
    """Largest field the ramp reaches, including overshoot."""
    if ramp.damping >= 1.0:
        return ramp.target
    zeta = ramp.damping
    return ramp.target * (1.0 + math.exp(-zeta * math.pi / math.sqrt(1.0 - zeta * zeta)))


def crossing_time(ramp: FieldRamp, level: float) -> float | None:
    """First time (us after the trigger) the ramp reaches ``level``; None if never."""
    if level <= 0:
        return ramp.switch_delay_us
    fraction = level / ramp.target
    if level > peak_field(ramp) or (ramp.damping >= 1.0 and fraction >= 1.0):
        return None
    zeta = ramp.damping
    if zeta < 1.0:
        bound = _first_rise_bound(zeta)
    else:
        bound = 1.0
        while _unit_step(bound, zeta) < fraction:
            bound *= 2.0
    tau = float(brentq(lambda t: _unit_step(t, zeta) - fraction, 0.0, bound))
    return ramp.switch_delay_us + tau / ramp_natural_frequency(ramp)


def ionization_threshold(n_star: float) -> float:
    """Classical saddle-point field 1 / (16 n*^4) a.u., in V/cm."""
    if not n_star > 0:
        msg = f"effective quantum number must be positive, got {n_star}"
        raise PhysicsDomainError(msg)
    return ATOMIC_FIELD_V_PER_CM / (16.0 * n_star**4)


# ---------------------------------------------------------------------------
# Detection timeline
# ---------------------------------------------------------------------------


class Species(StrEnum):
    BACKGROUND = "background"
    PROMPT_ION = "prompt-ion"
    RYDBERG = "field-ionized-rydberg"


@dataclass(frozen=True, slots=True)
class RydbergPopulation:
    label: str
    n_star: float
    count: float


@dataclass(frozen=True, slots=True)
class DetectionEvent:
    species: Species
    label: str
    time_us: float | None  # None when never reached
    count: float
    threshold: float | None = None  # V/cm
    detected: bool = True


@dataclass(frozen=True, slots=True)
class DetectionSettings:
    pulse_us: float = 100.0
    mcp_width_us: float = 1.0  # Gaussian sigma of the detector response
    collision_smear_us: float = 5.0  # extra sigma for field-ionized Rydberg ions
    background_count: float = 0.0  # ions spread over the excitation pulse
    prompt_ions: float = 0.0
    window_after_ramp_us: float = 200.0
    noise_sigma: float = 0.0
    seed: int | None = None
    calibration: float = 1.0  # atoms per signal unit


@dataclass(slots=True)
class DetectionTimeline:
    time_us: FloatArray
    field_trace: FloatArray  # V/cm
    signal: FloatArray  # signal units per us
    events: list[DetectionEvent] = field(default_factory=list)
    calibration: float = 1.0
    ramp_start_us: float = 0.0

    @property
    def detected_count(self) -> float:
        return sum(e.count for e in self.events if e.detected)

    @property
    def undetected(self) -> list[DetectionEvent]:
        return [e for e in self.events if not e.detected]

    def rydberg_peak_time(self) -> float | None:
        """Count-weighted mean arrival of the detected Rydberg events."""
        rydberg = [
            e for e in self.events if e.species is Species.RYDBERG and e.detected and e.count > 0
        ]
        total = sum(e.count for e in rydberg)
        if total == 0:
            return None
        return sum(e.count * (e.time_us or 0.0) for e in rydberg) / total


def _gaussian_kernel(t: FloatArray, center: float, sigma: float) -> FloatArray:
    """Discrete kernel with sum(kernel) * dt = 1 on ``t``."""
    dt = t[1] - t[0]
    if sigma <= 0:
        kernel = np.zeros_like(t)
        kernel[int(np.argmin(np.abs(t - center)))] = 1.0
    else:
        kernel = np.exp(-0.5 * ((t - center) / sigma) ** 2)
    total = kernel.sum() * dt
    if total == 0:
        kernel = np.zeros_like(t)
        kernel[int(np.argmin(np.abs(t - center)))] = 1.0
        total = dt
    return np.asarray(kernel / total, dtype=np.float64)


def detection_trace(
    populations: Sequence[RydbergPopulation],
    ramp: FieldRamp,
    settings: DetectionSettings | None = None,
) -> DetectionTimeline:
    """Field and MCP signal on a 0.1 us grid for one excitation cycle.

    Every event contributes a kernel normalized so that the trace integral
    (sum * dt) equals its count. Rydberg levels the ramp never ionizes are
    kept as undetected events.
    """
    settings = settings or DetectionSettings()
    if any(p.count < 0 for p in populations) or settings.prompt_ions < 0:
        msg = "populations must be non-negative"
        raise PhysicsDomainError(msg)
    if settings.background_count < 0:
        msg = "background count must be non-negative"
        raise PhysicsDomainError(msg)

    ramp_start = settings.pulse_us
    stop = ramp_start + ramp.switch_delay_us + settings.window_after_ramp_us
    t = np.round(np.arange(0.0, stop + SAMPLE_STEP_US / 2, SAMPLE_STEP_US), 10)
    dt = SAMPLE_STEP_US
    fld = np.where(t >= ramp_start, field_ramp(np.maximum(t - ramp_start, 0.0), ramp), 0.0)
    ions = np.zeros_like(t)
    events: list[DetectionEvent] = []

    if settings.background_count > 0:
        window = (t >= 0) & (t < settings.pulse_us)
        ions[window] += settings.background_count / (np.count_nonzero(window) * dt)
        events.append(
            DetectionEvent(
                species=Species.BACKGROUND,
                label="collision ions",
                time_us=settings.pulse_us / 2.0,
                count=settings.background_count,
            )
        )

    arrival = ramp_start + ramp.switch_delay_us + ramp.flight_time_us
    if settings.prompt_ions > 0:
        ions += settings.prompt_ions * _gaussian_kernel(t, arrival, settings.mcp_width_us)
        events.append(
            DetectionEvent(
                species=Species.PROMPT_ION,
                label="prompt ions",
                time_us=arrival,
                count=settings.prompt_ions,
                threshold=0.0,
            )
        )

    smear = math.hypot(settings.mcp_width_us, settings.collision_smear_us)
    for pop in populations:
        threshold = ionization_threshold(pop.n_star)
        crossing = crossing_time(ramp, threshold)
        if crossing is None:
            logger.warning(
                "population_undetected",
                label=pop.label,
                threshold_v_per_cm=threshold,
                peak_field=peak_field(ramp),
            )
            events.append(
                DetectionEvent(
                    species=Species.RYDBERG,
                    label=pop.label,
                    time_us=None,
                    count=pop.count,
                    threshold=threshold,
                    detected=False,
                )
            )
            continue
        when = ramp_start + crossing + ramp.flight_time_us
        if pop.count > 0:
            ions += pop.count * _gaussian_kernel(t, when, smear)
        events.append(
            DetectionEvent(
                species=Species.RYDBERG,
                label=pop.label,
                time_us=when,
                count=pop.count,
                threshold=threshold,
            )
        )

    signal = ions / settings.calibration
    if settings.noise_sigma > 0:
        rng = np.random.default_rng(settings.seed)
        signal = signal + rng.normal(0.0, settings.noise_sigma, size=signal.shape)

    logger.info(
        "detection_trace",
        events=len(events),
        undetected=sum(1 for e in events if not e.detected),
        samples=int(t.shape[0]),
    )
    return DetectionTimeline(
        time_us=t,
        field_trace=np.asarray(fld, dtype=np.float64),
        signal=np.asarray(signal, dtype=np.float64),
        events=events,
        calibration=settings.calibration,
        ramp_start_us=ramp_start,
    )


def annotate_features(timeline: DetectionTimeline) -> list[dict[str, object]]:
    """Times of the during-pulse background (a), prompt ions (b) and Rydberg peak (c)."""
    features: list[dict[str, object]] = []
    names = {
        Species.BACKGROUND: ("a", "ions during the excitation pulse"),
        Species.PROMPT_ION: ("b", "ions pulled out at the start of the ramp"),
    }
    for event in timeline.events:
        if event.species in names and event.detected:
            tag, text = names[event.species]
            features.append({"feature": tag, "t_us": event.time_us, "description": text})
    peak = timeline.rydberg_peak_time()
    if peak is not None:
        features.append(
            {
                "feature": "c",
                "t_us": peak,
                "lag_us": peak - timeline.ramp_start_us,
                "description": "field-ionized Rydberg atoms",
            }
        )
    return features


def integrate_rydberg_signal(
    timeline: DetectionTimeline, window: tuple[float, float] | None = None
) -> float:
    """Atom number in a time window: signal integral times the calibration."""
    if window is None:
        window = (timeline.ramp_start_us, float(timeline.time_us[-1]))
    lo, hi = window
    if hi <= lo:
        msg = f"empty integration window {window}"
        raise PhysicsDomainError(msg)
    mask = (timeline.time_us >= lo) & (timeline.time_us <= hi)
    return float(np.sum(timeline.signal[mask]) * SAMPLE_STEP_US * timeline.calibration)


# ---------------------------------------------------------------------------
# MCP calibration from MOT depletion
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class MCPCalibration:
    steady_state: float  # atoms with ionization on
    depletion: float  # atoms removed relative to the unperturbed MOT
    atoms_per_signal: float


def _check_mot(loading_rate: float, lifetime_s: float, ionization_rate: float) -> None:
    if loading_rate <= 0 or lifetime_s <= 0:
        msg = "MOT loading rate and lifetime must be positive"
        raise CalibrationError(msg)
    if ionization_rate <= 0:
        msg = "ionization rate must be positive to calibrate the MCP"
        raise CalibrationError(msg)
    if ionization_rate >= loading_rate:
        logger.warning(
            "mot_extinction", loading_rate=loading_rate, ionization_rate=ionization_rate
        )
        msg = f"ionization rate {ionization_rate} >= loading rate {loading_rate}: MOT extinct"
        raise MOTExtinctionError(msg)


def mcp_calibration(
    loading_rate: float, lifetime_s: float, ionization_rate: float, ion_signal: float
) -> MCPCalibration:
    """Steady state of dN/dt = L - N/tau - R and the MCP atoms-per-signal factor."""
    _check_mot(loading_rate, lifetime_s, ionization_rate)
    if ion_signal <= 0:
        msg = "measured ion signal must be positive"
        raise CalibrationError(msg)
    steady = (loading_rate - ionization_rate) * lifetime_s
    return MCPCalibration(
        steady_state=steady,
        depletion=ionization_rate * lifetime_s,
        atoms_per_signal=ionization_rate / ion_signal,
    )


def ionization_rate_from_depletion(depletion: float, lifetime_s: float) -> float:
    """R = delta N / tau, inverting a camera measurement of the depleted MOT."""
    if lifetime_s <= 0 or depletion < 0:
        msg = "depletion must be non-negative and lifetime positive"
        raise CalibrationError(msg)
    return depletion / lifetime_s


def depletion_curve(
    loading_rate: float, lifetime_s: float, ionization_rate: float, t_s: FloatArray
) -> FloatArray:
    """MOT atom number after ionization switches on at t = 0 from the unperturbed state."""
    _check_mot(loading_rate, lifetime_s, ionization_rate)
    times = np.asarray(t_s, dtype=np.float64)
    solution = solve_ivp(
        lambda _t, n: loading_rate - n / lifetime_s - ionization_rate,
        (0.0, float(times[-1])),
        [loading_rate * lifetime_s],
        t_eval=times,
        rtol=1e-10,
        atol=1e-6,
    )
    return np.asarray(solution.y[0], dtype=np.float64)


def settle_time(
    loading_rate: float, lifetime_s: float, ionization_rate: float, fraction: float = 0.95
) -> float:
    """Time for the depletion to reach ``fraction`` of its final value, in s."""
    if not 0 < fraction < 1:
        msg = f"fraction must lie in (0, 1), got {fraction}"
        raise CalibrationError(msg)
    t = np.linspace(0.0, 10.0 * lifetime_s, 20001)
    n = depletion_curve(loading_rate, lifetime_s, ionization_rate, t)
    progress = (loading_rate * lifetime_s - n) / (ionization_rate * lifetime_s)
    return float(np.interp(fraction, progress, t))
