# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Exception hierarchy shared by the library and the command line.

Library code raises; only :mod:`rydspec.main` maps exceptions to exit codes.
Conditions that are physically meaningful but not fatal (diabatic tracks,
truncated radial solutions, undetected populations) are reported as flags on
the returned objects instead.
"""

from __future__ import annotations

# ---------------------------------------------------------------------------
# Base
# ---------------------------------------------------------------------------


class RydspecError(Exception):
    """Base exception for all rydspec errors."""

    exit_code = 1


# ---------------------------------------------------------------------------
# Configuration and data (exit 1)
# ---------------------------------------------------------------------------


class ConfigError(RydspecError):
    """Invalid run configuration (unknown keys, bad lock point, bad units)."""

    exit_code = 1


class DataFileError(ConfigError):
    """Malformed or inconsistent atomic constants file."""


class MissingConstantError(DataFileError, LookupError):
    """A constant or defect channel required by a calculation is not in the data file."""


# ---------------------------------------------------------------------------
# Physics domain (exit 2)
# ---------------------------------------------------------------------------


class PhysicsDomainError(RydspecError):
    """Input outside the physical or numerical domain of an operation."""

    exit_code = 2


class AngularMomentumError(PhysicsDomainError, ValueError):
    """Malformed angular momentum (parity mismatch, negative magnitude, over the cap)."""


class QuantumNumberError(PhysicsDomainError, ValueError):
    """Invalid level quantum numbers (l >= n, j not l +/- 1/2, F out of range)."""


class BasisCapacityError(PhysicsDomainError):
    """Requested Stark basis exceeds the configured memory budget."""


class FieldRangeError(PhysicsDomainError):
    """Requested field lies outside the range covered by a Stark map."""


class ResolutionError(PhysicsDomainError):
    """Non-positive resolution floor or a degenerate sampling grid."""


class CalibrationError(PhysicsDomainError):
    """MCP calibration is undefined for the given rates."""


class MOTExtinctionError(CalibrationError):
    """Ionization loss rate reaches the loading rate; no steady state exists."""
