# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from rydspec.radial import RadialCache
from rydspec.schemas.config import RunConfig
from rydspec.services.artifacts import Cell, write_csv, write_json
from rydspec.structure import AtomData


@dataclass(slots=True)
class RunContext:
    """Everything a scenario needs besides its configuration.

    Artifacts are written through the context so the run metadata can list
    them in the order they were produced.
    """

    data: AtomData
    output_dir: Path
    workers: int = 1
    options: Mapping[str, Any] = field(default_factory=dict)
    cache: RadialCache = field(default_factory=RadialCache)
    artifacts: list[Path] = field(default_factory=list)

    def write_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Cell]]) -> Path:
        path = write_csv(self.output_dir / name, header, rows)
        self.artifacts.append(path)
        return path

    def write_json(self, name: str, payload: object) -> Path:
        path = write_json(self.output_dir / name, payload)
        self.artifacts.append(path)
        return path

    def record(self, path: Path) -> Path:
        """Register an artifact written by a domain writer."""
        self.artifacts.append(path)
        return path


class Scenario(ABC):
    """Base class for command-line scenarios.

    A scenario turns a validated :class:`RunConfig` into artifacts under the
    output directory and returns a JSON-serializable summary that ends up in
    the run metadata.
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """Subcommand name (e.g. 'starkmap', 'autler')."""
        ...

    @property
    def version(self) -> str:
        """Semantic version of the scenario's output format."""
        return "1.0.0"

    @property
    def description(self) -> str:
        """One-line description shown by ``rydspec list``."""
        return ""

    @abstractmethod
    def run(self, config: RunConfig, context: RunContext) -> dict[str, Any]:
        """Compute, write artifacts and return the summary."""
        ...
