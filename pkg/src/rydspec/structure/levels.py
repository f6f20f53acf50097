# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Field-free level energies and hyperfine/Zeeman shifts.

Energies are in GHz relative to the ionization limit, hyperfine and Zeeman
quantities in MHz.
"""

from __future__ import annotations

from dataclasses import dataclass

from scipy.constants import physical_constants

from rydspec.angular import AngularArg, HalfInt
from rydspec.errors import PhysicsDomainError, QuantumNumberError
from rydspec.structure.constants import AtomData, LevelConstants, format_label

_BOHR_MAGNETON_MHZ_PER_GAUSS = physical_constants["Bohr magneton in Hz/T"][0] * 1e-4 * 1e-6


@dataclass(frozen=True, slots=True)
class RydbergLevel:
    """Fine-structure level |n l j> with its effective principal quantum number."""

    n: int
    l: int
    j: HalfInt
    n_star: float

    @property
    def label(self) -> str:
        return format_label(self.n, self.l, self.j)

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.n, self.l, self.j.twice_value)


def quantum_defect(data: AtomData, n: int, l: int, j: AngularArg) -> float:
    """Rydberg-Ritz defect truncated after the delta2 term."""
    return data.defect_series(l, HalfInt.of(j)).defect(n)


def rydberg_level(data: AtomData, n: int, l: int, j: AngularArg) -> RydbergLevel:
    """Validate quantum numbers and attach n* from the defect table."""
    hj = HalfInt.of(j)
    if n < 1 or l < 0 or l >= n:
        msg = f"invalid quantum numbers n={n}, l={l}"
        raise QuantumNumberError(msg)
    if hj.is_integer or abs(hj.twice_value - 2 * l) != 1:
        msg = f"j={hj} is not l +/- 1/2 for l={l}"
        raise QuantumNumberError(msg)
    n_star = n - quantum_defect(data, n, l, hj)
    if n_star <= 0:
        msg = f"effective quantum number {n_star} <= 0 for n={n}, l={l}, j={hj}"
        raise QuantumNumberError(msg)
    return RydbergLevel(n=n, l=l, j=hj, n_star=n_star)


def effective_n(data: AtomData, n: int, l: int, j: AngularArg) -> float:
    """n* = n - delta(n, l, j)."""
    return rydberg_level(data, n, l, j).n_star


def level_energy(level: RydbergLevel, data: AtomData) -> float:
    """E = -Ry / n*^2 in GHz."""
    return -data.rydberg_ghz / level.n_star**2


def rydberg_hyperfine_a(level: RydbergLevel, data: AtomData) -> float:
    """Magnetic-dipole hyperfine constant A(n) = A_ref / n*^3 in MHz."""
    return data.hyperfine_ref(level.l, level.j) / level.n_star**3


# ---------------------------------------------------------------------------
# Hyperfine structure
# ---------------------------------------------------------------------------


def _check_f(I: HalfInt, J: HalfInt, F: HalfInt) -> None:
    low = abs(I.twice_value - J.twice_value)
    high = I.twice_value + J.twice_value
    if not low <= F.twice_value <= high or (F.twice_value - high) % 2:
        msg = f"F={F} is not allowed for I={I}, J={J}"
        raise QuantumNumberError(msg)


def hyperfine_shift(
    A: float, B: float, I: AngularArg, J: AngularArg, F: AngularArg
) -> float:
    """Dipole plus quadrupole hyperfine shift of level F in MHz.

    With K = F(F+1) - I(I+1) - J(J+1)::

        dE = A K / 2 + B [3/2 K(K+1) - 2 I(I+1) J(J+1)] / [4 I(2I-1) J(2J-1)]

    The quadrupole term vanishes for I or J <= 1/2.
    """
    hI, hJ, hF = HalfInt.of(I), HalfInt.of(J), HalfInt.of(F)
    _check_f(hI, hJ, hF)
    i, j, f = hI.value, hJ.value, hF.value
    K = f * (f + 1) - i * (i + 1) - j * (j + 1)
    shift = A * K / 2
    if B and i > 0.5 and j > 0.5:
        shift += (
            B
            * (1.5 * K * (K + 1) - 2 * i * (i + 1) * j * (j + 1))
            / (4 * i * (2 * i - 1) * j * (2 * j - 1))
        )
    return shift


def allowed_f(I: AngularArg, J: AngularArg) -> list[HalfInt]:
    hI, hJ = HalfInt.of(I), HalfInt.of(J)
    low = abs(hI.twice_value - hJ.twice_value)
    return [HalfInt(t) for t in range(low, hI.twice_value + hJ.twice_value + 1, 2)]


def hyperfine_levels(A: float, B: float, I: AngularArg, J: AngularArg) -> dict[HalfInt, float]:
    """Every allowed F mapped to its shift in MHz."""
    return {F: hyperfine_shift(A, B, I, J, F) for F in allowed_f(I, J)}


def hyperfine_interval(
    level: LevelConstants, I: AngularArg, F1: AngularArg, F2: AngularArg
) -> float:
    """E(F2) - E(F1) in MHz for a tabulated level."""
    a, b = level.hyperfine_a, level.hyperfine_b
    return hyperfine_shift(a, b, I, level.j, F2) - hyperfine_shift(a, b, I, level.j, F1)


# ---------------------------------------------------------------------------
# Zeeman broadening
# ---------------------------------------------------------------------------


def g_f_factor(g_j: float, I: AngularArg, J: AngularArg, F: AngularArg) -> float:
    """Lande g_F with the nuclear g-factor neglected."""
    i, j, f = HalfInt.of(I).value, HalfInt.of(J).value, HalfInt.of(F).value
    if f == 0:
        return 0.0
    return g_j * (f * (f + 1) - i * (i + 1) + j * (j + 1)) / (2 * f * (f + 1))


def mf_spacing_mhz_per_gauss(level: LevelConstants, I: AngularArg, F: AngularArg) -> float:
    """Shift between neighboring m_F sublevels per gauss, in MHz/G."""
    if level.g_j is None:
        msg = f"no g_j for level {level.label}"
        raise QuantumNumberError(msg)
    return abs(g_f_factor(level.g_j, I, level.j, F)) * _BOHR_MAGNETON_MHZ_PER_GAUSS


def zeeman_slope(
    spacing_mhz_per_gauss: float,
    gradient_g_per_cm: float,
    diameter_um: float,
    mf_span: int,
) -> float:
    """Magnetic broadening across a cloud in a field gradient, in MHz.

    width = spacing * gradient * diameter * mf_span
    """
    if spacing_mhz_per_gauss < 0 or gradient_g_per_cm < 0 or diameter_um < 0 or mf_span < 0:
        msg = "Zeeman broadening inputs must be non-negative"
        raise PhysicsDomainError(msg)
    return spacing_mhz_per_gauss * gradient_g_per_cm * (diameter_um * 1e-4) * mf_span


# ---------------------------------------------------------------------------
# Data-file sanity checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class DataCheck:
    name: str
    value: float
    expected: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return abs(self.value - self.expected) <= self.tolerance


def validate_atom_data(data: AtomData) -> list[DataCheck]:
    """Recompute well-known intervals from the shipped constants."""
    I = data.nuclear_spin
    ground = data.level("5S1/2")
    excited = data.level("5P3/2")
    checks = [
        # For J = 1/2 the ground splitting is A (I + 1/2).
        DataCheck(
            name="5S1/2 F=1->F=2 splitting (MHz)",
            value=hyperfine_interval(ground, I, 1, 2),
            expected=6834.7,
            tolerance=1.0,
        ),
        DataCheck(
            name="5P3/2 F'=1->F'=3 interval (MHz)",
            value=hyperfine_interval(excited, I, 1, 3),
            expected=423.0,
            tolerance=2.0,
        ),
        DataCheck(
            name="5S1/2 F=2 m_F spacing (MHz/G)",
            value=mf_spacing_mhz_per_gauss(ground, I, 2),
            expected=0.70,
            tolerance=0.01,
        ),
    ]
    if excited.linewidth is not None:
        checks.append(
            DataCheck(
                name="5P3/2 natural linewidth (MHz)",
                value=excited.linewidth,
                expected=6.07,
                tolerance=0.05,
            )
        )
    return checks
