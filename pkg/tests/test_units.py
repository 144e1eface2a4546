from __future__ import annotations

import pytest

from atomchip.errors import ConfigError
from atomchip.units import gauss_to_tesla, parse_quantity, tesla_to_gauss


@pytest.mark.parametrize(
    "text, dim, value",
    [
        ("80 G", "magnetic field", 8e-3),
        ("5 um", "length", 5e-6),
        ("5µm", "length", 5e-6),
        ("0.1 A", "current", 0.1),
        ("300 K", "temperature", 300.0),
        ("4.54e7 S/m", "conductivity", 4.54e7),
        ("12.5 um^2", "area", 12.5e-12),
        ("-2.5e-3 s", "time", -2.5e-3),
        ("10 kHz", "frequency", 1e4),
    ],
)
def test_parse(text, dim, value):
    assert parse_quantity(text, dim) == pytest.approx(value, rel=1e-15)


def test_bare_numbers_only_dimensionless():
    assert parse_quantity(3, "dimensionless") == 3.0
    assert parse_quantity("2.5", "dimensionless") == 2.5
    with pytest.raises(ConfigError, match="missing unit"):
        parse_quantity(3, "length", "trap.r0")
    with pytest.raises(ConfigError, match="missing unit"):
        parse_quantity("3", "length")
    with pytest.raises(ConfigError):
        parse_quantity(True, "dimensionless")


def test_errors_carry_path():
    with pytest.raises(ConfigError) as info:
        parse_quantity("80 um", "magnetic field", "trap.bias_x")
    assert info.value.path == "trap.bias_x"
    assert "length" in info.value.message
    with pytest.raises(ConfigError, match="unknown unit"):
        parse_quantity("1 furlong", "length")
    with pytest.raises(ConfigError, match="cannot parse"):
        parse_quantity("G 80", "magnetic field")


def test_gauss_roundtrip():
    assert tesla_to_gauss(gauss_to_tesla(7.0)) == pytest.approx(7.0, rel=1e-15)
