# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import pytest

from rydspec.errors import ConfigError
from rydspec.main import run
from rydspec.scenarios import RunContext, Scenario, ScenarioRegistry, default_registry
from rydspec.schemas.config import SUBCOMMANDS, RunConfig, parse_run_config
from rydspec.structure import AtomData

# -- Stub scenario for testing ------------------------------------------------


class _StubScenario(Scenario):
    @property
    def name(self) -> str:
        return "validate-data"

    @property
    def version(self) -> str:
        return "0.0.1"

    def run(self, config: RunConfig, context: RunContext) -> dict[str, Any]:
        context.write_csv("stub.csv", ["x", "y"], [(1, 0.5), (2, None)])
        return {"species": context.data.species, "workers": context.workers}


# -- Scenario ABC tests -------------------------------------------------------


class TestScenarioABC:
    def test_cannot_instantiate_abstract(self) -> None:
        with pytest.raises(TypeError):
            Scenario()  # type: ignore[abstract]

    def test_stub_scenario_implements_abc(self) -> None:
        scenario = _StubScenario()
        assert scenario.name == "validate-data"
        assert scenario.version == "0.0.1"
        assert scenario.description == ""  # default


class TestRunContext:
    def test_artifacts_recorded_in_order(self, rb87: AtomData, tmp_path: Path) -> None:
        context = RunContext(data=rb87, output_dir=tmp_path)
        first = context.write_json("a.json", {"k": 1})
        second = context.write_csv("b.csv", ["h"], [("v",)])
        third = context.record(tmp_path / "c.csv")
        assert context.artifacts == [first, second, third]
        assert first.read_text(encoding="utf-8") == '{\n  "k": 1\n}\n'


# -- ScenarioRegistry tests ---------------------------------------------------


class TestScenarioRegistry:
    def test_register_and_get(self) -> None:
        registry = ScenarioRegistry()
        scenario = _StubScenario()
        registry.register(scenario)
        assert registry.get("validate-data") is scenario

    def test_get_missing_returns_none(self) -> None:
        assert ScenarioRegistry().get("nonexistent") is None

    def test_require_missing_raises(self) -> None:
        registry = ScenarioRegistry()
        registry.register(_StubScenario())
        with pytest.raises(ConfigError, match="known: validate-data"):
            registry.require("starkmap")

    def test_all_scenarios(self) -> None:
        registry = ScenarioRegistry()
        scenario = _StubScenario()
        registry.register(scenario)
        assert registry.all_scenarios() == [scenario]

    def test_duplicate_registration_raises(self) -> None:
        registry = ScenarioRegistry()
        registry.register(_StubScenario())
        with pytest.raises(ValueError, match="already registered"):
            registry.register(_StubScenario())


# -- Built-in scenario tests --------------------------------------------------


class TestBuiltinScenarios:
    def test_every_subcommand_registered(self) -> None:
        assert sorted(default_registry().names()) == sorted(SUBCOMMANDS)

    @pytest.mark.parametrize("name", SUBCOMMANDS)
    def test_properties(self, name: str) -> None:
        scenario = default_registry().require(name)
        assert scenario.version == "1.0.0"
        assert scenario.description != ""


# -- run() --------------------------------------------------------------------


class TestRun:
    def test_metadata_lists_artifacts(self, tmp_path: Path) -> None:
        registry = ScenarioRegistry()
        registry.register(_StubScenario())
        config = parse_run_config({"subcommand": "validate-data", "output_dir": str(tmp_path)})
        result = run(config, registry=registry, workers=3)

        assert result.summary == {"species": "Rb87", "workers": 3}
        assert result.metadata == tmp_path / "validate-data.json"
        metadata = json.loads(result.metadata.read_text(encoding="utf-8"))
        assert metadata["artifacts"] == ["stub.csv"]
        assert metadata["scenario_version"] == "0.0.1"
        assert metadata["constants"]["species"] == "Rb87"
        assert len(metadata["constants"]["sha256"]) == 64
        assert metadata["config"]["subcommand"] == "validate-data"
        assert (tmp_path / "stub.csv").read_text(encoding="utf-8") == "x,y\n1,0.5\n2,\n"

    def test_workers_default_from_settings(
        self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        monkeypatch.setenv("RYDSPEC_WORKERS", "2")
        registry = ScenarioRegistry()
        registry.register(_StubScenario())
        config = parse_run_config({"subcommand": "validate-data", "output_dir": str(tmp_path)})
        assert run(config, registry=registry).summary["workers"] == 2

    def test_missing_constants_file(self, tmp_path: Path) -> None:
        config = parse_run_config(
            {
                "subcommand": "validate-data",
                "output_dir": str(tmp_path),
                "constants_file": str(tmp_path / "absent.constants"),
            }
        )
        with pytest.raises(OSError):
            run(config)
