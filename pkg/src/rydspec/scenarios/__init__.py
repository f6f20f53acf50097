# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

from rydspec.scenarios.base import RunContext, Scenario
from rydspec.scenarios.registry import (
    ScenarioRegistry,
    default_registry,
    discover_builtin_scenarios,
)

__all__ = [
    "RunContext",
    "Scenario",
    "ScenarioRegistry",
    "default_registry",
    "discover_builtin_scenarios",
]
