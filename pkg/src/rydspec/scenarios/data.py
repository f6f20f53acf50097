# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

from __future__ import annotations

from typing import Any

import structlog

from rydspec.errors import DataFileError
from rydspec.schemas.config import RunConfig
from rydspec.scenarios.base import RunContext, Scenario
from rydspec.structure import validate_atom_data

logger = structlog.get_logger(__name__)


class ValidateDataScenario(Scenario):
    @property
    def name(self) -> str:
        return "validate-data"

    @property
    def description(self) -> str:
        return "Recompute known intervals from the constants file"

    def run(self, config: RunConfig, context: RunContext) -> dict[str, Any]:
        checks = validate_atom_data(context.data)
        context.write_csv(
            "validate-data.csv",
            ("check", "value", "expected", "tolerance", "passed"),
            ((c.name, c.value, c.expected, c.tolerance, c.passed) for c in checks),
        )
        failed = [c.name for c in checks if not c.passed]
        for check in checks:
            logger.info("data_check", check=check.name, value=check.value, passed=check.passed)
        if failed:
            msg = f"{context.data.version}: checks failed: {', '.join(failed)}"
            raise DataFileError(msg)
        return {"checks": len(checks), "version": context.data.version}
