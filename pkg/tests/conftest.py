# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

from __future__ import annotations

from collections.abc import Iterator
from pathlib import Path

import pytest

from rydspec.angular import HalfInt
from rydspec.config import DEFAULT_CONSTANTS_FILE, get_settings
from rydspec.radial import RadialCache
from rydspec.sequence import FieldRamp
from rydspec.spectra import SpectralLine
from rydspec.stark import BasisSpec
from rydspec.structure import AtomData, RydbergLevel, load_atom_data


@pytest.fixture(scope="session")
def rb87() -> AtomData:
    """The shipped 87Rb constants."""
    return load_atom_data(DEFAULT_CONSTANTS_FILE)


@pytest.fixture(scope="session")
def hydrogenic(rb87: AtomData) -> AtomData:
    """87Rb constants with every quantum defect set to zero."""
    return rb87.with_zero_defects()


@pytest.fixture
def radial_cache() -> RadialCache:
    return RadialCache()


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    """Keep RYDSPEC_* variables from the host out of the cached settings."""
    for name in ("RYDSPEC_WORKERS", "RYDSPEC_MAX_BASIS_SIZE", "RYDSPEC_CONSTANTS_FILE"):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


# ---------------------------------------------------------------------------
# Factory helpers
# ---------------------------------------------------------------------------

CONSTANTS_HEADER = """\
@version test-1
X  atom  rydberg_constant  3289821.194  GHz  test
X  atom  nuclear_spin      1.5          dimensionless  test
X  atom  mass              86.9         u  test
"""


def make_constants_text(*records: str, header: str = CONSTANTS_HEADER) -> str:
    """Constants-file text with the atom records plus ``records``."""
    return header + "".join(f"{r}\n" for r in records)


def make_constants_file(tmp_path: Path, *records: str) -> Path:
    path = tmp_path / "test.constants"
    path.write_text(make_constants_text(*records), encoding="utf-8")
    return path


def make_hydrogen_level(n: int, l: int, *, j: float | None = None) -> RydbergLevel:
    """Level with n* = n, as for hydrogen in the Coulomb approximation."""
    twice_j = 2 * l + 1 if j is None else round(2 * j)
    return RydbergLevel(n=n, l=l, j=HalfInt(twice_j), n_star=float(n))


def make_basis_spec(
    *,
    center_n: int = 41,
    m: float = 0.5,
    delta_n: int = 1,
    l_max: int | None = 5,
    include_hyperfine: bool = False,
    targets: tuple[str, ...] = ("41D5/2", "41D3/2"),
    intermediate_f: int = 3,
) -> BasisSpec:
    """Small Stark block around 41D suitable for unit tests."""
    return BasisSpec(
        center_n=center_n,
        m=HalfInt.of(m),
        delta_n=delta_n,
        l_max=l_max,
        include_hyperfine=include_hyperfine,
        targets=targets,
        intermediate_f=HalfInt(2 * intermediate_f),
    )


def make_line(
    *,
    line_id: str = "L",
    center: float = 0.0,
    strength: float = 1.0,
    gaussian_fwhm: float = 0.0,
    lorentzian_fwhm: float = 1.0,
    tophat_width: float = 0.0,
) -> SpectralLine:
    return SpectralLine(
        line_id=line_id,
        center=center,
        strength=strength,
        gaussian_fwhm=gaussian_fwhm,
        lorentzian_fwhm=lorentzian_fwhm,
        tophat_width=tophat_width,
    )


def make_ramp(
    *,
    target: float = 300.0,
    rise_time_us: float = 55.0,
    damping: float = 0.6,
    switch_delay_us: float = 0.0,
    flight_time_us: float = 0.0,
) -> FieldRamp:
    return FieldRamp(
        target=target,
        rise_time_us=rise_time_us,
        damping=damping,
        switch_delay_us=switch_delay_us,
        flight_time_us=flight_time_us,
    )


def make_config_file(tmp_path: Path, body: str, name: str = "run.toml") -> Path:
    """Write a TOML run configuration; ``output_dir`` defaults into tmp_path."""
    text = body
    if "output_dir" not in body:
        text = f'output_dir = "{(tmp_path / "out").as_posix()}"\n' + body
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path
