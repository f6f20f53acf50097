# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

from __future__ import annotations

import json
from pathlib import Path

import pytest

from rydspec.main import main
from rydspec.schemas.config import parse_run_config
from tests.conftest import make_config_file

CONFIG_DIR = Path(__file__).resolve().parents[2] / "configs"


def _summary(capsys: pytest.CaptureFixture[str]) -> dict[str, object]:
    out = capsys.readouterr().out.strip().splitlines()
    return dict(json.loads(out[-1]))


# -- Determinism --------------------------------------------------------------


class TestDeterministicArtifacts:
    @pytest.mark.parametrize(
        ("argv", "files"),
        [
            (["autler", "--sweep-s", "2,151"], ["autler.csv", "autler_sweep.csv"]),
            (["sequence", "--config", str(CONFIG_DIR / "sequence.toml")], ["sequence.csv"]),
            (["validate-data"], ["validate-data.csv"]),
        ],
        ids=["autler", "sequence", "validate-data"],
    )
    def test_repeat_runs_are_byte_identical(
        self, tmp_path: Path, argv: list[str], files: list[str]
    ) -> None:
        first, second = tmp_path / "a", tmp_path / "b"
        assert main([*argv, "--output-dir", str(first)]) == 0
        assert main([*argv, "--output-dir", str(second)]) == 0
        for name in files:
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_metadata_config_round_trips(self, tmp_path: Path) -> None:
        assert main(["autler", "--output-dir", str(tmp_path), "--seed", "5"]) == 0
        metadata = json.loads((tmp_path / "autler.json").read_text(encoding="utf-8"))
        config = parse_run_config(metadata["config"])
        assert config.seed == 5
        assert config.output_dir == tmp_path
        assert config.model_dump(mode="json") == metadata["config"]
        assert metadata["artifacts"] == ["autler.csv", "autler_sweep.csv"]


# -- Subcommands --------------------------------------------------------------


class TestSubcommands:
    def test_list(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["list"]) == 0
        names = [line.split()[0] for line in capsys.readouterr().out.splitlines()]
        assert "starkmap" in names
        assert "validate-data" in names

    def test_validate_data_summary(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        assert main(["validate-data", "--output-dir", str(tmp_path)]) == 0
        assert _summary(capsys) == {"checks": 4, "version": "2026.1"}

    def test_autler_sweep_flag(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["autler", "--output-dir", str(tmp_path), "--sweep-s", "2,151"]) == 0
        summary = _summary(capsys)
        sweep = summary["sweep"]
        assert isinstance(sweep, list)
        assert [row["resolved"] for row in sweep] == [False, True]
        rabi = summary["rabi_MHz"]
        assert isinstance(rabi, float)
        assert rabi == pytest.approx(24.60, abs=0.01)

    def test_sequence_annotations(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        argv = ["sequence", "--config", str(CONFIG_DIR / "sequence.toml")]
        assert main([*argv, "--output-dir", str(tmp_path), "--annotate"]) == 0
        summary = _summary(capsys)
        assert summary["undetected"] == []
        assert "calibration" in summary
        features = json.loads((tmp_path / "sequence_annotations.json").read_text("utf-8"))
        assert [f["feature"] for f in features] == ["a", "b", "c"]

    def test_hfselect_path_separation(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        argv = ["hfselect", "--config", str(CONFIG_DIR / "hfselect.toml")]
        assert main([*argv, "--output-dir", str(tmp_path)]) == 0
        separation = _summary(capsys)["path_separation_MHz"]
        assert isinstance(separation, float)
        assert separation == pytest.approx(423.59, abs=0.05)
        header = (tmp_path / "hfselect.csv").read_text("utf-8").splitlines()[0]
        assert header == "detuning_MHz,F1_unpumped,F1_pumped,F2_unpumped,F2_pumped"

    def test_small_starkmap(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        path = make_config_file(
            tmp_path,
            'subcommand = "starkmap"\n'
            '[basis]\ncenter_n = 41\ndelta_n = 0\nl_max = 3\nm_values = [0.5]\n'
            'targets = ["41D5/2"]\n'
            "[fields]\nstop_v_per_cm = 0.2\nstep_v_per_cm = 0.1\n",
        )
        assert main(["starkmap", "--config", str(path)]) == 0
        summary = _summary(capsys)
        assert summary["field_points"] == 3
        rows = (tmp_path / "out" / "starkmap_m1_2.csv").read_text("utf-8").splitlines()
        # 41S, 41P (2), 41D (2), 41F (2)
        assert len(rows) == 1 + 3 * 7


# -- Exit codes ---------------------------------------------------------------


class TestExitCodes:
    def test_config_error_exits_1(self, tmp_path: Path) -> None:
        path = make_config_file(tmp_path, 'subcommand = "autler"\n[drive]\nsaturaton = 3.0\n')
        assert main(["autler", "--config", str(path)]) == 1

    def test_physics_error_exits_2(self, tmp_path: Path) -> None:
        path = make_config_file(
            tmp_path, 'subcommand = "autler"\n[spectrum]\nstart_mhz = 0.0\nstop_mhz = 5.0\n'
        )
        assert main(["autler", "--config", str(path)]) == 2

    def test_missing_constants_exits_3(self, tmp_path: Path) -> None:
        argv = ["validate-data", "--output-dir", str(tmp_path)]
        assert main([*argv, "--constants", str(tmp_path / "absent.constants")]) == 3

    def test_corrupt_constants_exits_1(self, tmp_path: Path) -> None:
        bad = tmp_path / "bad.constants"
        bad.write_text("Rb87  atom  mass  86.9  u  t\n", encoding="utf-8")
        argv = ["validate-data", "--output-dir", str(tmp_path / "out")]
        assert main([*argv, "--constants", str(bad)]) == 1

    def test_workers_must_be_positive(self, tmp_path: Path) -> None:
        with pytest.raises(SystemExit):
            main(["autler", "--output-dir", str(tmp_path), "--workers", "0"])
