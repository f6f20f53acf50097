# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Spatial addressing with an electric-field gradient across the cloud.

A beam at ``offset`` (um) from the cloud center sees the field
E = E0 + gradient * offset. Its line sits at the Stark-shifted center at that
field; the field spread along the beam (transverse gradient times cloud
diameter) broadens it by |d nu / dE| times that spread.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import structlog
from numpy.typing import NDArray
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from rydspec.errors import FieldRangeError, PhysicsDomainError
from rydspec.spectra.profiles import SpectralLine, combine_widths
from rydspec.stark.maps import StarkMap, line_centers

logger = structlog.get_logger(__name__)

UM_PER_CM = 1e4
DEFAULT_TARGET_RATIO = 98.0 / 75.0

FloatArray = NDArray[np.float64]


@dataclass(frozen=True, slots=True)
class CloudGeometry:
    diameter_um: float
    b_gradient_g_per_cm: float = 0.0
    e_gradient_v_per_cm2: float = 0.0
    beam_offset_um: float = 0.0
    transverse_e_gradient_v_per_cm2: float = 0.0

    def __post_init__(self) -> None:
        if not self.diameter_um > 0:
            msg = f"cloud diameter must be positive, got {self.diameter_um}"
            raise PhysicsDomainError(msg)
        values = (
            self.b_gradient_g_per_cm,
            self.e_gradient_v_per_cm2,
            self.beam_offset_um,
            self.transverse_e_gradient_v_per_cm2,
        )
        if not all(math.isfinite(v) for v in values):
            msg = "cloud gradients and offsets must be finite"
            raise PhysicsDomainError(msg)

    @property
    def transverse_field_spread(self) -> float:
        """Field spread (V/cm) along the excitation beam across the cloud."""
        return abs(self.transverse_e_gradient_v_per_cm2) * self.diameter_um / UM_PER_CM


@dataclass(frozen=True, slots=True)
class LineCurve:
    """Line center (MHz) of one level as a smooth function of field (V/cm)."""

    label: str
    fields: FloatArray
    centers_mhz: FloatArray

    @classmethod
    def from_maps(cls, maps: Sequence[StarkMap], label: str) -> LineCurve:
        return cls(label=label, fields=maps[0].fields, centers_mhz=line_centers(maps, label))

    def spline(self) -> CubicSpline:
        if self.fields.shape[0] < 3:
            msg = f"line curve for {self.label} needs at least three field points"
            raise FieldRangeError(msg)
        x, y = self.fields, self.centers_mhz
        if x[0] > x[-1]:
            x, y = x[::-1], y[::-1]
        return CubicSpline(x, y)

    def covers(self, field: float) -> bool:
        return bool(np.min(self.fields) <= field <= np.max(self.fields))


@dataclass(frozen=True, slots=True)
class AddressingPoint:
    label: str
    offset_um: float
    field: float  # V/cm
    center_mhz: float
    shift_mhz: float  # relative to the center at E0
    slope_mhz_per_vcm: float
    width_mhz: float


def _field_at(e0: float, geom: CloudGeometry, offset_um: float) -> float:
    return e0 + geom.e_gradient_v_per_cm2 * offset_um / UM_PER_CM


def gradient_addressing_scan(
    curves: Sequence[LineCurve],
    geom: CloudGeometry,
    offsets_um: Sequence[float],
    e0: float,
    *,
    extra_widths_mhz: Sequence[float] = (),
) -> list[AddressingPoint]:
    """Center, shift and width of every curve at every beam offset.

    ``extra_widths_mhz`` (laser, Zeeman, ...) are combined in quadrature with
    the field-inhomogeneity width. Points are ordered by curve, then offset.
    """
    points: list[AddressingPoint] = []
    for curve in curves:
        spline = curve.spline()
        spline_derivative = spline.derivative()
        if not curve.covers(e0):
            msg = f"bias field {e0} V/cm lies outside the {curve.label} curve"
            raise FieldRangeError(msg)
        base = float(spline(e0))
        for offset in offsets_um:
            field = _field_at(e0, geom, offset)
            if not curve.covers(field):
                msg = (
                    f"offset {offset} um drives the field to {field:.4g} V/cm, "
                    f"outside the computed range of {curve.label}"
                )
                raise FieldRangeError(msg)
            center = float(spline(field))
            slope = float(spline_derivative(field))
            inhomogeneous = abs(slope) * geom.transverse_field_spread
            points.append(
                AddressingPoint(
                    label=curve.label,
                    offset_um=float(offset),
                    field=field,
                    center_mhz=center,
                    shift_mhz=center - base,
                    slope_mhz_per_vcm=slope,
                    width_mhz=combine_widths(inhomogeneous, *extra_widths_mhz),
                )
            )
    return points


@dataclass(frozen=True, slots=True)
class OperatingPoint:
    e0: float  # V/cm
    ratio: float
    shifts_mhz: tuple[float, float]


def _shift_ratio(
    numerator: LineCurve, denominator: LineCurve, geom: CloudGeometry, offset: float, e0: float
) -> tuple[float, float, float]:
    (a,) = (p.shift_mhz for p in gradient_addressing_scan([numerator], geom, [offset], e0))
    (b,) = (p.shift_mhz for p in gradient_addressing_scan([denominator], geom, [offset], e0))
    if b == 0.0:
        return math.inf, a, b
    return a / b, a, b


def fit_operating_field(
    numerator: LineCurve,
    denominator: LineCurve,
    geom: CloudGeometry,
    *,
    target_ratio: float = DEFAULT_TARGET_RATIO,
    offset_um: float | None = None,
    samples: int = 200,
) -> OperatingPoint:
    """Bias field whose shift ratio at ``offset_um`` best matches ``target_ratio``.

    E0 is scanned over every value for which the shifted field stays on the
    curves; a sign change of ratio - target is refined with brentq, otherwise
    the closest sample is reported.
    """
    offset = geom.diameter_um if offset_um is None else offset_um
    delta = _field_at(0.0, geom, offset)
    lo = max(np.min(numerator.fields), np.min(denominator.fields))
    hi = min(np.max(numerator.fields), np.max(denominator.fields))
    lo, hi = lo - min(0.0, delta), hi - max(0.0, delta)
    if hi <= lo:
        msg = "the field gradient across the offset exceeds the computed field range"
        raise FieldRangeError(msg)

    # Keep E0 + delta strictly inside the curves despite rounding.
    pad = 1e-9 * (hi - lo)
    candidates = np.linspace(lo + pad, hi - pad, samples)

    def residual(e: float) -> float:
        return _shift_ratio(numerator, denominator, geom, offset, e)[0] - target_ratio

    residuals = np.array([residual(float(e)) for e in candidates])
    finite = np.isfinite(residuals)
    if not np.any(finite):
        msg = "no bias field gives a finite shift ratio"
        raise FieldRangeError(msg)

    best = int(np.nanargmin(np.where(finite, np.abs(residuals), np.nan)))
    e0 = float(candidates[best])
    brackets = np.flatnonzero(finite[:-1] & finite[1:] & (residuals[:-1] * residuals[1:] < 0))
    if brackets.size:
        i = int(brackets[0])
        e0 = float(brentq(residual, candidates[i], candidates[i + 1]))

    ratio, a, b = _shift_ratio(numerator, denominator, geom, offset, e0)
    logger.info("operating_field_fitted", e0=e0, ratio=ratio, target=target_ratio)
    return OperatingPoint(e0=e0, ratio=ratio, shifts_mhz=(a, b))


# ---------------------------------------------------------------------------
# Stark-shifted lines at one bias field
# ---------------------------------------------------------------------------


def stark_lines_at(
    maps: Sequence[StarkMap],
    labels: Sequence[str],
    field: float,
    geom: CloudGeometry,
    *,
    lorentzian_fwhm: float = 1.0,
    gaussian_fwhm: float = 0.0,
) -> list[SpectralLine]:
    """One line per target level at ``field``, which must lie on the map grid.

    Strength is the summed excitation strength of the level's tracks over all
    blocks; the top-hat width is |d nu / dE| times the transverse field spread.
    """
    fields = maps[0].fields
    index = int(np.argmin(np.abs(fields - field)))
    if not math.isclose(float(fields[index]), field, rel_tol=1e-9, abs_tol=1e-12):
        msg = f"field {field} V/cm is not a point of the computed Stark map grid"
        raise FieldRangeError(msg)
    lines = []
    for label in labels:
        curve = LineCurve.from_maps(maps, label)
        slope = float(curve.spline().derivative()(field)) if fields.shape[0] >= 3 else 0.0
        strength = sum(
            float(np.sum(smap.strengths[index, list(smap.target_tracks(label))]))
            for smap in maps
        )
        lines.append(
            SpectralLine(
                line_id=label,
                center=float(curve.centers_mhz[index]),
                strength=strength,
                gaussian_fwhm=gaussian_fwhm,
                lorentzian_fwhm=lorentzian_fwhm,
                tophat_width=abs(slope) * geom.transverse_field_spread,
            )
        )
    return lines
