"""Unit-suffixed scalars ("80 G", "5 um", "0.1 A") and their SI values.

Everything inside the library is SI.  Conversion happens once, at the
configuration boundary.
"""

from __future__ import annotations

import re

from .errors import ConfigError

GAUSS = 1e-4  # T
MICRON = 1e-6  # m

# symbol -> (SI factor, dimension)
UNITS = {
    "T": (1.0, "magnetic field"),
    "mT": (1e-3, "magnetic field"),
    "uT": (1e-6, "magnetic field"),
    "G": (GAUSS, "magnetic field"),
    "mG": (1e-3 * GAUSS, "magnetic field"),
    "m": (1.0, "length"),
    "cm": (1e-2, "length"),
    "mm": (1e-3, "length"),
    "um": (MICRON, "length"),
    "µm": (MICRON, "length"),
    "μm": (MICRON, "length"),
    "nm": (1e-9, "length"),
    "A": (1.0, "current"),
    "mA": (1e-3, "current"),
    "K": (1.0, "temperature"),
    "mK": (1e-3, "temperature"),
    "S/m": (1.0, "conductivity"),
    "1/(Ohm m)": (1.0, "conductivity"),
    "m^2": (1.0, "area"),
    "um^2": (MICRON**2, "area"),
    "s": (1.0, "time"),
    "ms": (1e-3, "time"),
    "us": (1e-6, "time"),
    "ns": (1e-9, "time"),
    "fs": (1e-15, "time"),
    "Hz": (1.0, "frequency"),
    "kHz": (1e3, "frequency"),
    "1/s": (1.0, "frequency"),
    "rad/s": (1.0, "frequency"),
}

_QUANTITY = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(\S.*?)?\s*$")


def gauss_to_tesla(b):
    return b * GAUSS


def tesla_to_gauss(b):
    return b / GAUSS


def parse_quantity(text, dimension: str, path: str = "") -> float:
    """SI value of a string such as ``"2.5 um"``.

    Bare numbers are accepted only for dimensionless quantities.
    """
    if isinstance(text, bool):
        raise ConfigError("expected a quantity with unit", path)
    if isinstance(text, (int, float)):
        if dimension == "dimensionless":
            return float(text)
        raise ConfigError(f"missing unit (expected a {dimension}, e.g. \"1.0 {example_unit(dimension)}\")", path)
    m = _QUANTITY.match(str(text))
    if not m:
        raise ConfigError(f"cannot parse quantity {text!r}", path)
    value, unit = float(m.group(1)), m.group(2)
    if unit is None:
        if dimension == "dimensionless":
            return value
        raise ConfigError(f"missing unit in {text!r} (expected a {dimension})", path)
    if unit not in UNITS:
        raise ConfigError(f"unknown unit {unit!r}", path)
    factor, dim = UNITS[unit]
    if dim != dimension:
        raise ConfigError(f"unit {unit!r} is a {dim}, expected a {dimension}", path)
    return value * factor


def example_unit(dimension: str) -> str:
    for sym, (_, dim) in UNITS.items():
        if dim == dimension:
            return sym
    return ""
