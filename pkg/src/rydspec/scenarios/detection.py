# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

from __future__ import annotations

from typing import Any

from rydspec.errors import ConfigError
from rydspec.schemas.config import RunConfig
from rydspec.scenarios.base import RunContext, Scenario
from rydspec.sequence import (
    DetectionSettings,
    FieldRamp,
    RydbergPopulation,
    annotate_features,
    detection_trace,
    integrate_rydberg_signal,
    mcp_calibration,
    settle_time,
)
from rydspec.structure import effective_n, parse_label


class SequenceScenario(Scenario):
    @property
    def name(self) -> str:
        return "sequence"

    @property
    def description(self) -> str:
        return "Excitation pulse, field-ionization ramp and MCP arrival trace"

    def run(self, config: RunConfig, context: RunContext) -> dict[str, Any]:
        det = config.detection
        ramp = FieldRamp(
            target=config.ramp.target_v_per_cm,
            rise_time_us=config.ramp.rise_time_us,
            damping=config.ramp.damping,
            switch_delay_us=config.ramp.switch_delay_us,
            flight_time_us=config.ramp.flight_time_us,
        )
        populations = []
        for pop in det.populations:
            n, l, j = parse_label(pop.label)
            if n is None:
                msg = f"population {pop.label!r} needs a principal quantum number"
                raise ConfigError(msg)
            n_star = effective_n(context.data, n, l, j)
            populations.append(RydbergPopulation(label=pop.label, n_star=n_star, count=pop.count))

        summary: dict[str, Any] = {}
        atoms_per_signal = 1.0
        cal = config.calibration
        if cal is not None:
            result = mcp_calibration(
                cal.loading_rate_per_s,
                cal.lifetime_s,
                cal.ionization_rate_per_s,
                cal.ion_signal_per_s,
            )
            atoms_per_signal = result.atoms_per_signal
            summary["calibration"] = {
                "steady_state_atoms": result.steady_state,
                "depletion_atoms": result.depletion,
                "atoms_per_signal": result.atoms_per_signal,
                "settle_time_s": settle_time(
                    cal.loading_rate_per_s, cal.lifetime_s, cal.ionization_rate_per_s
                ),
            }

        settings = DetectionSettings(
            pulse_us=det.pulse_us,
            mcp_width_us=det.mcp_width_us,
            collision_smear_us=det.collision_smear_us,
            background_count=det.background_count,
            prompt_ions=det.prompt_ions,
            window_after_ramp_us=det.window_after_ramp_us,
            noise_sigma=det.noise_sigma,
            seed=config.seed,
            calibration=atoms_per_signal,
        )
        timeline = detection_trace(populations, ramp, settings)
        context.write_csv(
            "sequence.csv",
            ("t_us", "field_V_per_cm", "mcp_signal"),
            zip(
                timeline.time_us.tolist(),
                timeline.field_trace.tolist(),
                timeline.signal.tolist(),
                strict=True,
            ),
        )
        context.write_json(
            "sequence_events.json",
            [
                {
                    "species": str(e.species),
                    "label": e.label,
                    "time_us": e.time_us,
                    "count": e.count,
                    "threshold_V_per_cm": e.threshold,
                    "detected": e.detected,
                }
                for e in timeline.events
            ],
        )
        if context.options.get("annotate"):
            context.write_json("sequence_annotations.json", annotate_features(timeline))

        peak = timeline.rydberg_peak_time()
        summary.update(
            {
                "detected_count": timeline.detected_count,
                "undetected": [e.label for e in timeline.undetected],
                "rydberg_peak_lag_us": None if peak is None else peak - timeline.ramp_start_us,
                "rydberg_atoms": integrate_rydberg_signal(timeline),
            }
        )
        return summary
