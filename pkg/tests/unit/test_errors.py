# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

from __future__ import annotations

import pytest

from rydspec.errors import (
    AngularMomentumError,
    BasisCapacityError,
    CalibrationError,
    ConfigError,
    DataFileError,
    FieldRangeError,
    MissingConstantError,
    MOTExtinctionError,
    PhysicsDomainError,
    QuantumNumberError,
    ResolutionError,
    RydspecError,
)


class TestExitCodes:
    @pytest.mark.parametrize("exc", [ConfigError, DataFileError, MissingConstantError])
    def test_configuration_errors_exit_1(self, exc: type[RydspecError]) -> None:
        assert exc.exit_code == 1

    @pytest.mark.parametrize(
        "exc",
        [
            AngularMomentumError,
            QuantumNumberError,
            BasisCapacityError,
            FieldRangeError,
            ResolutionError,
            CalibrationError,
            MOTExtinctionError,
        ],
    )
    def test_physics_errors_exit_2(self, exc: type[RydspecError]) -> None:
        assert issubclass(exc, PhysicsDomainError)
        assert exc.exit_code == 2


class TestHierarchy:
    def test_missing_constant_is_lookup_error(self) -> None:
        with pytest.raises(LookupError):
            raise MissingConstantError("no quantum defect for channel l=1")

    def test_quantum_number_is_value_error(self) -> None:
        assert issubclass(QuantumNumberError, ValueError)
        assert issubclass(AngularMomentumError, ValueError)

    def test_extinction_is_calibration_error(self) -> None:
        assert issubclass(MOTExtinctionError, CalibrationError)

    def test_data_file_is_config_error(self) -> None:
        assert issubclass(DataFileError, ConfigError)
        assert not issubclass(ConfigError, PhysicsDomainError)
