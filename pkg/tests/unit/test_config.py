# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

from __future__ import annotations

from pathlib import Path

import pytest
from pydantic import ValidationError

from rydspec.config import DEFAULT_CONSTANTS_FILE, Settings, get_settings
from rydspec.errors import ConfigError
from rydspec.schemas.config import RunConfig, load_run_config, parse_run_config
from tests.conftest import make_config_file

CONFIG_DIR = Path(__file__).resolve().parents[2] / "configs"

# -- Settings -----------------------------------------------------------------


class TestSettings:
    def test_defaults(self) -> None:
        settings = get_settings()
        assert settings.constants_file == DEFAULT_CONSTANTS_FILE
        assert settings.workers == 1
        assert settings.max_basis_size == 6000

    def test_env_override(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("RYDSPEC_WORKERS", "4")
        get_settings.cache_clear()
        assert get_settings().workers == 4

    def test_cached(self) -> None:
        assert get_settings() is get_settings()

    def test_constants_suffix(self, tmp_path: Path) -> None:
        with pytest.raises(ValidationError, match=r"\.constants"):
            Settings(constants_file=tmp_path / "rb87.txt")

    def test_radial_points_floor(self) -> None:
        with pytest.raises(ValidationError):
            Settings(radial_points=100)


# -- Run configuration --------------------------------------------------------


class TestParseRunConfig:
    def test_defaults(self) -> None:
        config = parse_run_config({"subcommand": "starkmap"})
        assert config.basis.center_n == 41
        assert config.basis.m_values == [0.5, 1.5, 2.5]
        assert config.calibration is None
        assert config.drive.coupling == pytest.approx(7 / 15)

    def test_unknown_top_level_key(self) -> None:
        with pytest.raises(ConfigError, match="invalid run configuration"):
            parse_run_config({"subcommand": "starkmap", "colour": "blue"})

    def test_unknown_section_key(self) -> None:
        with pytest.raises(ConfigError):
            parse_run_config({"subcommand": "starkmap", "basis": {"centre_n": 40}})

    def test_unknown_subcommand(self) -> None:
        with pytest.raises(ConfigError):
            parse_run_config({"subcommand": "plot"})

    def test_integer_m_rejected(self) -> None:
        with pytest.raises(ConfigError, match="half-integer"):
            parse_run_config({"subcommand": "starkmap", "basis": {"m_values": [0.5, 1.0]}})

    def test_field_order(self) -> None:
        raw = {"subcommand": "starkmap", "fields": {"start_v_per_cm": 2.0, "stop_v_per_cm": 1.0}}
        with pytest.raises(ConfigError, match="stop_v_per_cm"):
            parse_run_config(raw)

    def test_spectrum_order(self) -> None:
        raw = {"subcommand": "spectrum", "spectrum": {"start_mhz": 5.0, "stop_mhz": 5.0}}
        with pytest.raises(ConfigError):
            parse_run_config(raw)

    def test_negative_saturation(self) -> None:
        with pytest.raises(ConfigError):
            parse_run_config({"subcommand": "autler", "drive": {"sweep_s": [2.0, -1.0]}})

    def test_frozen(self) -> None:
        config = parse_run_config({"subcommand": "autler"})
        with pytest.raises(ValidationError):
            config.seed = 3  # type: ignore[misc]


class TestLoadRunConfig:
    def test_toml_sections(self, tmp_path: Path) -> None:
        path = make_config_file(
            tmp_path,
            'subcommand = "sequence"\n'
            "[ramp]\nrise_time_us = 40.0\n"
            '[[detection.populations]]\nlabel = "41D3/2"\ncount = 5.0\n',
        )
        config = load_run_config(path)
        assert config.ramp.rise_time_us == 40.0
        assert [p.label for p in config.detection.populations] == ["41D3/2"]
        assert config.output_dir == tmp_path / "out"

    def test_overrides_replace_keys(self, tmp_path: Path) -> None:
        path = make_config_file(tmp_path, 'subcommand = "autler"\nseed = 1\n')
        config = load_run_config(path, seed=9, subcommand="sequence", constants_file=None)
        assert config.seed == 9
        assert config.subcommand == "sequence"
        assert config.constants_file is None

    def test_bad_toml(self, tmp_path: Path) -> None:
        path = make_config_file(tmp_path, "subcommand = \n")
        with pytest.raises(ConfigError, match="run.toml"):
            load_run_config(path)

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(OSError):
            load_run_config(tmp_path / "absent.toml")

    @pytest.mark.parametrize("path", sorted(CONFIG_DIR.glob("*.toml")), ids=lambda p: p.stem)
    def test_shipped_configs_parse(self, path: Path) -> None:
        assert isinstance(load_run_config(path), RunConfig)
