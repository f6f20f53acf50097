# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

from __future__ import annotations

from rydspec.errors import ConfigError
from rydspec.scenarios.base import Scenario


class ScenarioRegistry:
    """Lookup of scenarios by subcommand name."""

    def __init__(self) -> None:
        self._scenarios: dict[str, Scenario] = {}

    def register(self, scenario: Scenario) -> None:
        """Add a scenario. Raises ValueError if name already registered."""
        if scenario.name in self._scenarios:
            msg = f"Scenario '{scenario.name}' is already registered"
            raise ValueError(msg)
        self._scenarios[scenario.name] = scenario

    def get(self, name: str) -> Scenario | None:
        """Return a scenario by name, or None."""
        return self._scenarios.get(name)

    def require(self, name: str) -> Scenario:
        scenario = self.get(name)
        if scenario is None:
            msg = f"unknown subcommand '{name}'; known: {', '.join(self.names())}"
            raise ConfigError(msg)
        return scenario

    def names(self) -> list[str]:
        return list(self._scenarios)

    def all_scenarios(self) -> list[Scenario]:
        """Return all registered scenarios in registration order."""
        return list(self._scenarios.values())


def discover_builtin_scenarios() -> list[Scenario]:
    """Import and instantiate built-in scenarios."""
    from rydspec.scenarios.data import ValidateDataScenario
    from rydspec.scenarios.detection import SequenceScenario
    from rydspec.scenarios.lasers import AutlerScenario, HFSelectScenario
    from rydspec.scenarios.stark import AddressingScenario, SpectrumScenario, StarkMapScenario

    return [
        StarkMapScenario(),
        SpectrumScenario(),
        AddressingScenario(),
        HFSelectScenario(),
        AutlerScenario(),
        SequenceScenario(),
        ValidateDataScenario(),
    ]


def default_registry() -> ScenarioRegistry:
    registry = ScenarioRegistry()
    for scenario in discover_builtin_scenarios():
        registry.register(scenario)
    return registry
