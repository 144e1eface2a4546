"""Decoherence of cold atoms in single- and double-wire atom-chip traps."""

from .errors import (
    AtomChipError,
    ConfigError,
    NoRootError,
    NumericError,
    QuadratureError,
    RegimeError,
    ResolutionError,
    SingularPointError,
)
from .trapgeom import PhysicalConstants, TrapConfiguration, trap_frequency, trap_minima

__all__ = [
    "AtomChipError",
    "ConfigError",
    "NoRootError",
    "NumericError",
    "QuadratureError",
    "RegimeError",
    "ResolutionError",
    "SingularPointError",
    "PhysicalConstants",
    "TrapConfiguration",
    "trap_frequency",
    "trap_minima",
]
