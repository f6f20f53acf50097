# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Atomic constants data file.

The file is record-per-line structured text::

    species  channel-or-level  constant  value  unit  source

``#`` starts a comment, ``@version <tag>`` names the release of the file.
Channels (``nD5/2``) hold quantum defects and Rydberg hyperfine references;
levels (``5P3/2``) hold hyperfine constants, g-factors and linewidths.
Unknown units, unknown constants and duplicate records are rejected.
"""

from __future__ import annotations

import hashlib
import re
from collections.abc import Mapping
from dataclasses import dataclass, field, replace
from pathlib import Path
from types import MappingProxyType

import structlog

from rydspec.angular import HalfInt
from rydspec.errors import DataFileError, MissingConstantError

logger = structlog.get_logger(__name__)

ALLOWED_UNITS = frozenset({"GHz", "MHz", "MHz_nstar3", "u", "dimensionless"})

# constant -> expected unit
_CHANNEL_CONSTANTS = {
    "delta0": "dimensionless",
    "delta2": "dimensionless",
    "hyperfine_a_ref": "MHz_nstar3",
}
_LEVEL_CONSTANTS = {
    "hyperfine_a": "MHz",
    "hyperfine_b": "MHz",
    "g_j": "dimensionless",
    "linewidth": "MHz",
}
_ATOM_CONSTANTS = {
    "rydberg_constant": "GHz",
    "nuclear_spin": "dimensionless",
    "mass": "u",
}

_L_LETTERS = "SPDFGHIKLMNOQRTUVWXYZ"
_LABEL_RE = re.compile(r"^(?P<n>\d+|n)(?P<l>[A-Z])(?P<j>\d+)/2$")

# ---------------------------------------------------------------------------
# Data classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class DefectSeries:
    """Rydberg-Ritz quantum defect of one (l, j) channel."""

    l: int
    j: HalfInt
    delta0: float
    delta2: float = 0.0

    def defect(self, n: int) -> float:
        return self.delta0 + self.delta2 / (n - self.delta0) ** 2


@dataclass(frozen=True, slots=True)
class LevelConstants:
    """Constants of a fixed low-lying level such as 5P3/2."""

    label: str
    n: int
    l: int
    j: HalfInt
    hyperfine_a: float = 0.0  # MHz
    hyperfine_b: float = 0.0  # MHz
    g_j: float | None = None
    linewidth: float | None = None  # MHz, natural


@dataclass(frozen=True, slots=True)
class AtomData:
    """Immutable view of a parsed constants file."""

    species: str
    version: str
    sha256: str
    rydberg_ghz: float
    nuclear_spin: HalfInt
    mass_u: float
    defects: Mapping[tuple[int, int], DefectSeries]
    levels: Mapping[str, LevelConstants]
    hyperfine_refs: Mapping[tuple[int, int], float] = field(
        default_factory=lambda: MappingProxyType({})
    )
    source: Path | None = None

    def defect_series(self, l: int, j: HalfInt) -> DefectSeries:
        """Defect channel for (l, j); l > 3 defaults to zero defect."""
        series = self.defects.get((l, j.twice_value))
        if series is not None:
            return series
        if l > 3:
            return DefectSeries(l=l, j=j, delta0=0.0, delta2=0.0)
        msg = f"no quantum defect for channel l={l}, j={j} in {self.species} data"
        raise MissingConstantError(msg)

    def level(self, label: str) -> LevelConstants:
        try:
            return self.levels[label]
        except KeyError:
            msg = f"level {label!r} not found in {self.species} data"
            raise MissingConstantError(msg) from None

    def hyperfine_ref(self, l: int, j: HalfInt) -> float:
        """A * n*^3 for a Rydberg channel in MHz; zero when not tabulated."""
        return self.hyperfine_refs.get((l, j.twice_value), 0.0)

    def with_zero_defects(self) -> AtomData:
        """Hydrogenic copy: every channel defect set to zero."""
        zeroed = {
            key: DefectSeries(l=s.l, j=s.j, delta0=0.0, delta2=0.0)
            for key, s in self.defects.items()
        }
        return replace(
            self, defects=MappingProxyType(zeroed), version=f"{self.version}+hydrogenic"
        )

    def with_hyperfine_scale(self, scale: float) -> AtomData:
        """Copy with every Rydberg hyperfine reference multiplied by ``scale``."""
        scaled = {key: value * scale for key, value in self.hyperfine_refs.items()}
        return replace(self, hyperfine_refs=MappingProxyType(scaled))


# ---------------------------------------------------------------------------
# Labels
# ---------------------------------------------------------------------------


def l_letter(l: int) -> str:
    return _L_LETTERS[l] if l < len(_L_LETTERS) else f"[l={l}]"


def parse_label(label: str) -> tuple[int | None, int, HalfInt]:
    """Parse ``41D5/2`` into (41, 2, 5/2); ``nD5/2`` gives n = None."""
    match = _LABEL_RE.match(label.strip())
    if match is None:
        msg = f"cannot parse level label {label!r}"
        raise DataFileError(msg)
    if match["l"] not in _L_LETTERS:
        msg = f"unknown orbital letter in {label!r}"
        raise DataFileError(msg)
    n = None if match["n"] == "n" else int(match["n"])
    l = _L_LETTERS.index(match["l"])
    twice_j = int(match["j"])
    if twice_j % 2 == 0 or abs(twice_j - 2 * l) != 1:
        msg = f"j={twice_j}/2 is not l +/- 1/2 in {label!r}"
        raise DataFileError(msg)
    return n, l, HalfInt(twice_j)


def format_label(n: int, l: int, j: HalfInt) -> str:
    return f"{n}{l_letter(l)}{j.twice_value}/2"


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _parse_records(text: str, origin: str) -> tuple[str, list[tuple[int, list[str]]]]:
    version = ""
    records: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("@version"):
            parts = line.split()
            if len(parts) != 2:
                msg = f"{origin}:{lineno}: malformed @version line"
                raise DataFileError(msg)
            version = parts[1]
            continue
        fields = line.split()
        if len(fields) != 6:
            msg = f"{origin}:{lineno}: expected 6 fields, got {len(fields)}"
            raise DataFileError(msg)
        records.append((lineno, fields))
    if not version:
        msg = f"{origin}: missing @version line"
        raise DataFileError(msg)
    return version, records


def parse_atom_data(text: str, origin: str = "<string>") -> AtomData:
    """Parse constants file contents into :class:`AtomData`."""
    version, records = _parse_records(text, origin)
    species_seen: set[str] = set()
    atom: dict[str, float] = {}
    channels: dict[tuple[int, int], dict[str, float]] = {}
    levels: dict[str, dict[str, float]] = {}
    seen: set[tuple[str, str, str]] = set()

    for lineno, (species, key, constant, raw_value, unit, _source) in records:
        where = f"{origin}:{lineno}"
        if unit not in ALLOWED_UNITS:
            msg = f"{where}: unknown unit {unit!r}"
            raise DataFileError(msg)
        if (species, key, constant) in seen:
            msg = f"{where}: duplicate record {species} {key} {constant}"
            raise DataFileError(msg)
        seen.add((species, key, constant))
        species_seen.add(species)
        try:
            value = float(raw_value)
        except ValueError:
            msg = f"{where}: value {raw_value!r} is not a number"
            raise DataFileError(msg) from None

        if key == "atom":
            expected = _ATOM_CONSTANTS.get(constant)
            target: dict[str, float] = atom
        else:
            n, l, j = parse_label(key)
            if n is None:
                expected = _CHANNEL_CONSTANTS.get(constant)
                target = channels.setdefault((l, j.twice_value), {})
            else:
                expected = _LEVEL_CONSTANTS.get(constant)
                target = levels.setdefault(key, {})
        if expected is None:
            msg = f"{where}: unknown constant {constant!r} for {key}"
            raise DataFileError(msg)
        if unit != expected:
            msg = f"{where}: {constant} must be given in {expected}, not {unit}"
            raise DataFileError(msg)
        target[constant] = value

    if len(species_seen) != 1:
        msg = f"{origin}: expected exactly one species, found {sorted(species_seen)}"
        raise DataFileError(msg)
    for required in _ATOM_CONSTANTS:
        if required not in atom:
            msg = f"{origin}: missing atom constant {required}"
            raise MissingConstantError(msg)

    defects: dict[tuple[int, int], DefectSeries] = {}
    refs: dict[tuple[int, int], float] = {}
    for (l, twice_j), values in channels.items():
        if "delta0" in values:
            delta0 = values["delta0"]
            if not 0.0 <= delta0 < 4.0:
                msg = f"{origin}: delta0={delta0} out of range for l={l}"
                raise DataFileError(msg)
            defects[(l, twice_j)] = DefectSeries(
                l=l, j=HalfInt(twice_j), delta0=delta0, delta2=values.get("delta2", 0.0)
            )
        if "hyperfine_a_ref" in values:
            refs[(l, twice_j)] = values["hyperfine_a_ref"]

    level_constants: dict[str, LevelConstants] = {}
    for label, values in levels.items():
        n, l, j = parse_label(label)
        assert n is not None
        level_constants[label] = LevelConstants(
            label=label,
            n=n,
            l=l,
            j=j,
            hyperfine_a=values.get("hyperfine_a", 0.0),
            hyperfine_b=values.get("hyperfine_b", 0.0),
            g_j=values.get("g_j"),
            linewidth=values.get("linewidth"),
        )

    return AtomData(
        species=species_seen.pop(),
        version=version,
        sha256=hashlib.sha256(text.encode()).hexdigest(),
        rydberg_ghz=atom["rydberg_constant"],
        nuclear_spin=HalfInt.of(atom["nuclear_spin"]),
        mass_u=atom["mass"],
        defects=MappingProxyType(defects),
        levels=MappingProxyType(level_constants),
        hyperfine_refs=MappingProxyType(refs),
    )


def load_atom_data(path: Path | str) -> AtomData:
    """Read and parse a constants file. I/O failures propagate as OSError."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    data = replace(parse_atom_data(text, origin=str(path)), source=path)
    logger.info(
        "constants_loaded",
        path=str(path),
        species=data.species,
        version=data.version,
        channels=len(data.defects),
    )
    return data
