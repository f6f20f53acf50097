# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Rydberg spectroscopy simulator for ultracold 87Rb."""

__version__ = "0.1.0"
