# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Deterministic CSV and JSON writers.

This is the only module that writes run artifacts. Floats are formatted with
nine significant digits and rows keep the order they are given in, so the same
inputs always produce byte-identical files.
"""

from __future__ import annotations

import csv
import json
import math
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np
import structlog

from rydspec.angular import HalfInt
from rydspec.stark.hyperfine import HyperfineLineSet
from rydspec.stark.maps import StarkMap

logger = structlog.get_logger(__name__)

Cell = float | int | str | bool | None

STARKMAP_HEADER = ("field_V_per_cm", "track_id", "energy_GHz", "character", "strength")
HYPERFINE_HEADER = (
    "field_V_per_cm",
    "label",
    "F",
    "m_F",
    "energy_MHz",
    "strength",
    "character",
)


def format_cell(value: Cell) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if value == 0.0:
            return "0"  # also for -0.0
        return f"{value:.9g}"
    return str(value)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Cell]]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(v) for v in row])
            count += 1
    logger.debug("csv_written", path=str(path), rows=count)
    return path


def write_json(path: Path, payload: object) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(payload, sort_keys=True, indent=2, default=str)
    path.write_text(text + "\n", encoding="utf-8")
    logger.debug("json_written", path=str(path))
    return path


# ---------------------------------------------------------------------------
# Domain writers
# ---------------------------------------------------------------------------


def block_tag(m: HalfInt) -> str:
    """File-name tag of a symmetry block, e.g. ``m1_2`` for m = 1/2."""
    return "m" + str(m).replace("/", "_")


def starkmap_rows(smap: StarkMap) -> Iterable[tuple[Cell, ...]]:
    """Rows ordered by field, then track; energies relative to the reference target."""
    relative = smap.energies - smap.reference_energy
    character = np.zeros_like(relative)
    for values in smap.characters.values():
        character += values
    for i, fld in enumerate(smap.fields):
        for track in range(smap.tracks):
            yield (
                float(fld),
                track,
                float(relative[i, track]),
                float(character[i, track]),
                float(smap.strengths[i, track]),
            )


def write_starkmap_csv(path: Path, smap: StarkMap) -> Path:
    return write_csv(path, STARKMAP_HEADER, starkmap_rows(smap))


def write_hyperfine_csv(path: Path, sets: Sequence[HyperfineLineSet], reference: float) -> Path:
    rows = (
        (
            line_set.field,
            line.label,
            str(line.f),
            str(line.m_f),
            (line.energy - reference) * 1000.0,
            line.strength,
            line.character,
        )
        for line_set in sets
        for line in line_set.lines
    )
    return write_csv(path, HYPERFINE_HEADER, rows)
