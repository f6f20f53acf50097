# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Exact angular-momentum algebra.

Wigner 3j and 6j symbols are evaluated with the Racah sums in exact integer
arithmetic (Python integers never overflow) and converted to float only at the
end, through a correctly rounded big-integer division. Symbols are memoized by
a packed integer key built from the doubled quantum numbers.

All public functions accept :class:`HalfInt` or plain numbers (``1.5``,
``Fraction(3, 2)``); plain numbers must be integer or half-integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from rydspec.config import get_settings
from rydspec.errors import AngularMomentumError

_FIELD_BITS = 12
_OFFSET = 1 << (_FIELD_BITS - 1)
_MASK = (1 << _FIELD_BITS) - 1


@dataclass(frozen=True, slots=True, order=True)
class HalfInt:
    """Integer or half-integer stored exactly as twice its value."""

    twice_value: int

    @classmethod
    def of(cls, value: HalfInt | float | Fraction) -> HalfInt:
        if isinstance(value, HalfInt):
            return value
        return cls(_twice(value))

    @property
    def value(self) -> float:
        return self.twice_value / 2

    @property
    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    def projections(self) -> list[HalfInt]:
        """All m = -j, -j+1, ..., j."""
        return [HalfInt(t) for t in range(-self.twice_value, self.twice_value + 1, 2)]

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.twice_value // 2)
        return f"{self.twice_value}/2"


AngularArg = HalfInt | float | Fraction


def _twice(value: AngularArg) -> int:
    if isinstance(value, HalfInt):
        return value.twice_value
    doubled = 2 * value
    rounded = round(doubled)
    if abs(doubled - rounded) > 1e-9:
        msg = f"{value} is not an integer or half-integer"
        raise AngularMomentumError(msg)
    return int(rounded)


def _check_magnitudes(*twice_js: int) -> None:
    cap = get_settings().max_twice_j
    for tj in twice_js:
        if tj < 0:
            msg = f"angular momentum magnitude must be non-negative, got {tj}/2"
            raise AngularMomentumError(msg)
        if tj > cap:
            msg = f"2j = {tj} exceeds the configured maximum {cap}"
            raise AngularMomentumError(msg)


def _check_projection(tj: int, tm: int) -> None:
    if (tj - tm) % 2:
        msg = f"projection {tm}/2 has the wrong parity for j = {tj}/2"
        raise AngularMomentumError(msg)


def _pack(*values: int) -> int:
    key = 0
    for v in values:
        key = (key << _FIELD_BITS) | ((v + _OFFSET) & _MASK)
    return key


def _unpack(key: int, count: int) -> list[int]:
    values = []
    for _ in range(count):
        values.append((key & _MASK) - _OFFSET)
        key >>= _FIELD_BITS
    return values[::-1]


def _triangle(ta: int, tb: int, tc: int) -> bool:
    """Triangle rule on doubled values, including integer perimeter."""
    return (ta + tb + tc) % 2 == 0 and abs(ta - tb) <= tc <= ta + tb


@lru_cache(maxsize=4096)
def _factorial(n: int) -> int:
    return math.factorial(n)


def _delta(ta: int, tb: int, tc: int) -> Fraction:
    """Triangle coefficient (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)! on doubled values."""
    return Fraction(
        _factorial((ta + tb - tc) // 2)
        * _factorial((ta - tb + tc) // 2)
        * _factorial((-ta + tb + tc) // 2),
        _factorial((ta + tb + tc) // 2 + 1),
    )


def _signed_sqrt(sum_part: Fraction, radicand: Fraction) -> float:
    """sign(S) * sqrt(S**2 * P) evaluated exactly before the float conversion."""
    if sum_part == 0:
        return 0.0
    return math.copysign(math.sqrt(sum_part * sum_part * radicand), sum_part)


# ---------------------------------------------------------------------------
# 3j
# ---------------------------------------------------------------------------


def wigner3j(
    j1: AngularArg,
    j2: AngularArg,
    j3: AngularArg,
    m1: AngularArg,
    m2: AngularArg,
    m3: AngularArg,
) -> float:
    """Wigner 3j symbol (j1 j2 j3; m1 m2 m3)."""
    tj1, tj2, tj3 = _twice(j1), _twice(j2), _twice(j3)
    tm1, tm2, tm3 = _twice(m1), _twice(m2), _twice(m3)
    _check_magnitudes(tj1, tj2, tj3)
    for tj, tm in ((tj1, tm1), (tj2, tm2), (tj3, tm3)):
        _check_projection(tj, tm)
    return _wigner3j_packed(_pack(tj1, tj2, tj3, tm1, tm2, tm3))


@lru_cache(maxsize=1 << 18)
def _wigner3j_packed(key: int) -> float:
    tj1, tj2, tj3, tm1, tm2, tm3 = _unpack(key, 6)
    if tm1 + tm2 + tm3 != 0:
        return 0.0
    if not _triangle(tj1, tj2, tj3):
        return 0.0
    if abs(tm1) > tj1 or abs(tm2) > tj2 or abs(tm3) > tj3:
        return 0.0

    # Work with integer combinations of the doubled values.
    a = (tj1 + tj2 - tj3) // 2
    b = (tj1 - tm1) // 2
    c = (tj2 + tm2) // 2
    d = (tj3 - tj2 + tm1) // 2
    e = (tj3 - tj1 - tm2) // 2
    k_min = max(0, -d, -e)
    k_max = min(a, b, c)

    total = Fraction(0)
    for k in range(k_min, k_max + 1):
        denom = (
            _factorial(k)
            * _factorial(a - k)
            * _factorial(b - k)
            * _factorial(c - k)
            * _factorial(d + k)
            * _factorial(e + k)
        )
        total += Fraction(-1 if k % 2 else 1, denom)

    radicand = _delta(tj1, tj2, tj3) * (
        _factorial((tj1 + tm1) // 2)
        * _factorial((tj1 - tm1) // 2)
        * _factorial((tj2 + tm2) // 2)
        * _factorial((tj2 - tm2) // 2)
        * _factorial((tj3 + tm3) // 2)
        * _factorial((tj3 - tm3) // 2)
    )
    value = _signed_sqrt(total, radicand)
    if ((tj1 - tj2 - tm3) // 2) % 2:
        value = -value
    return value


# ---------------------------------------------------------------------------
# 6j
# ---------------------------------------------------------------------------


def wigner6j(
    j1: AngularArg,
    j2: AngularArg,
    j3: AngularArg,
    j4: AngularArg,
    j5: AngularArg,
    j6: AngularArg,
) -> float:
    """Wigner 6j symbol {j1 j2 j3; j4 j5 j6}."""
    twice = [_twice(j) for j in (j1, j2, j3, j4, j5, j6)]
    _check_magnitudes(*twice)
    return _wigner6j_packed(_pack(*twice))


@lru_cache(maxsize=1 << 16)
def _wigner6j_packed(key: int) -> float:
    a, b, c, d, e, f = _unpack(key, 6)
    triads = ((a, b, c), (a, e, f), (d, b, f), (d, e, c))
    if not all(_triangle(*t) for t in triads):
        return 0.0

    sums = [sum(t) // 2 for t in triads]
    quads = [(a + b + d + e) // 2, (b + c + e + f) // 2, (c + a + f + d) // 2]
    t_min = max(sums)
    t_max = min(quads)

    total = Fraction(0)
    for t in range(t_min, t_max + 1):
        denom = 1
        for s in sums:
            denom *= _factorial(t - s)
        for q in quads:
            denom *= _factorial(q - t)
        total += Fraction((-1 if t % 2 else 1) * _factorial(t + 1), denom)

    radicand = Fraction(1)
    for triad in triads:
        radicand *= _delta(*triad)
    return _signed_sqrt(total, radicand)


# ---------------------------------------------------------------------------
# Derived quantities
# ---------------------------------------------------------------------------


def clebsch_gordan(
    j1: AngularArg,
    m1: AngularArg,
    j2: AngularArg,
    m2: AngularArg,
    J: AngularArg,
    M: AngularArg,
) -> float:
    """Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> (Condon-Shortley phase)."""
    tj1, tm1, tj2, tm2, tJ, tM = (_twice(x) for x in (j1, m1, j2, m2, J, M))
    symbol = wigner3j(
        HalfInt(tj1), HalfInt(tj2), HalfInt(tJ), HalfInt(tm1), HalfInt(tm2), HalfInt(-tM)
    )
    if symbol == 0.0:
        return 0.0
    phase = -1.0 if ((tj1 - tj2 + tM) // 2) % 2 else 1.0
    return phase * math.sqrt(tJ + 1) * symbol


def reduced_c1(l1: int, l2: int) -> float:
    """<l1||C1||l2> for the rank-1 spherical tensor C1."""
    phase = -1.0 if l1 % 2 else 1.0
    return phase * math.sqrt((2 * l1 + 1) * (2 * l2 + 1)) * wigner3j(l1, 1, l2, 0, 0, 0)


def dipole_angular(
    l1: int,
    j1: AngularArg,
    m1: AngularArg,
    l2: int,
    j2: AngularArg,
    m2: AngularArg,
    q: int,
) -> float:
    """Angular factor of <l1 s j1 m1| r C1_q |l2 s j2 m2> for a spin-1/2 electron.

    Multiplying by the radial integral gives the matrix element of the q
    spherical component of r (q = 0 is z). Nonzero only for m1 = m2 + q and
    |l1 - l2| = 1.
    """
    tj1, tm1, tj2, tm2 = _twice(j1), _twice(m1), _twice(j2), _twice(m2)
    if tm1 != tm2 + 2 * q or abs(l1 - l2) != 1:
        return 0.0
    three_j = wigner3j(HalfInt(tj1), 1, HalfInt(tj2), HalfInt(-tm1), q, HalfInt(tm2))
    if three_j == 0.0:
        return 0.0
    six_j = wigner6j(l1, HalfInt(tj1), 0.5, HalfInt(tj2), l2, 1)
    # (-1)^(j1-m1) (-1)^(l1+s+j2+1) with s = 1/2
    exponent = (tj1 - tm1) // 2 + (2 * l1 + 1 + tj2 + 2) // 2
    phase = -1.0 if exponent % 2 else 1.0
    return (
        phase
        * three_j
        * math.sqrt((tj1 + 1) * (tj2 + 1))
        * six_j
        * reduced_c1(l1, l2)
    )


def hyperfine_transition_strength(
    J: AngularArg, F: AngularArg, J2: AngularArg, F2: AngularArg, I: AngularArg
) -> float:
    """Relative strength S(F -> F2) = (2F2+1)(2J+1){J J2 1; F2 F I}^2.

    Sums to one over F2 for fixed F, J, J2, I.
    """
    tF2 = _twice(F2)
    tJ = _twice(J)
    six_j = wigner6j(J, J2, 1, F2, F, I)
    return (tF2 + 1) * (tJ + 1) * six_j * six_j


def fine_transition_strength(l: int, j: AngularArg, l2: int, j2: AngularArg) -> float:
    """Share of the l -> l2 line strength that a level j sends to j2.

    S = (2j2+1)(2l+1){l l2 1; j2 j 1/2}^2, summing to one over j2.
    """
    six_j = wigner6j(l, l2, 1, j2, j, 0.5)
    return (_twice(j2) + 1) * (2 * l + 1) * six_j * six_j
