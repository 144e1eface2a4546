"""Wire-trap geometry: constants, magnetic fields, trap minima and the 2d-HO approximation.

Coordinates: the chip surface is the x-z plane, wires run along z, atoms sit
at y > 0.  The double-wire configuration has its wires at x = -d/2 (label
"L") and x = +d/2 (label "R"), both carrying the same current.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Literal

import numpy as np
from scipy import constants as sc
from scipy.optimize import least_squares

from .errors import RegimeError, SingularPointError

RB87_MASS = 86.909180527 * sc.physical_constants["atomic mass constant"][0]

SQRT8 = math.sqrt(8.0)
WIRE_LABELS = ("L", "R")
EPSILON = {"L": -1.0, "R": 1.0}


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA constants (via scipy) and the trapped species.

    ``g_convention`` selects how the Lande factor enters every formula:
    ``"bare"`` uses ``gF`` as written, ``"product"`` uses ``gF * mF``.
    The published trap frequency and rate values match the latter.
    """

    mu0: float = sc.mu_0
    muB: float = sc.physical_constants["Bohr magneton"][0]
    kB: float = sc.k
    hbar: float = sc.hbar
    eps0: float = sc.epsilon_0
    atom_mass: float = RB87_MASS
    gF: float = 0.5
    mF: float = 2.0
    g_convention: Literal["bare", "product"] = "bare"

    def __post_init__(self):
        for name in ("mu0", "muB", "kB", "hbar", "eps0", "atom_mass", "gF", "mF"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.g_convention not in ("bare", "product"):
            raise ValueError("g_convention must be 'bare' or 'product'")

    @property
    def g_eff(self) -> float:
        return self.gF * self.mF if self.g_convention == "product" else self.gF

    @property
    def moment(self) -> float:
        """Magnitude of the mean magnetic moment, 2 muB g (J/T)."""
        return 2.0 * self.muB * self.g_eff

    def table(self) -> dict:
        return {
            "mu0 [T m/A]": self.mu0,
            "muB [J/T]": self.muB,
            "kB [J/K]": self.kB,
            "hbar [J s]": self.hbar,
            "eps0 [F/m]": self.eps0,
            "atom_mass [kg]": self.atom_mass,
            "gF [1]": self.gF,
            "mF [1]": self.mF,
            "g_convention [-]": self.g_convention,
            "g_eff [1]": self.g_eff,
        }


@dataclass(frozen=True)
class TrapConfiguration:
    """Wire trap with bias fields and the material data of the noisy wire(s).

    All quantities SI.  ``wire_separation`` is required for (and only used by)
    the double-wire kind.
    """

    kind: Literal["single-wire", "double-wire"]
    current: float
    bias_x: float
    bias_z: float
    wire_separation: float | None = None
    conductivity: float = 4.54e7
    cross_section: float = 2.5e-6 * 5e-6
    noise_temperature: float = 300.0
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)

    def __post_init__(self):
        if self.kind not in ("single-wire", "double-wire"):
            raise ValueError(f"unknown trap kind {self.kind!r}")
        if not self.current > 0:
            raise ValueError("current must be positive")
        if not self.bias_x > 0 or not self.bias_z > 0:
            raise ValueError("both bias fields must be positive")
        if self.kind == "double-wire":
            if self.wire_separation is None or not self.wire_separation > 0:
                raise ValueError("double-wire trap needs a positive wire_separation")
        if self.noise_temperature < 0:
            raise ValueError("noise temperature must be non-negative")
        if not self.conductivity > 0 or not self.cross_section > 0:
            raise ValueError("conductivity and cross-section must be positive")

    @classmethod
    def single_wire(cls, r0: float, bias_x: float, bias_z: float, **kw) -> "TrapConfiguration":
        """Single-wire trap with the current chosen to put the minimum at height ``r0``."""
        c = kw.get("constants", PhysicalConstants())
        current = 2.0 * math.pi * r0 * bias_x / c.mu0
        return cls("single-wire", current, bias_x, bias_z, **kw)

    @classmethod
    def double_wire(cls, ybar: float, d: float, bias_x: float, bias_z: float, **kw) -> "TrapConfiguration":
        """Double-wire trap with the current chosen so that ``ybar = mu0 I / (2 pi Bx)``."""
        c = kw.get("constants", PhysicalConstants())
        current = 2.0 * math.pi * ybar * bias_x / c.mu0
        return cls("double-wire", current, bias_x, bias_z, wire_separation=d, **kw)

    def with_separation(self, d: float) -> "TrapConfiguration":
        return replace(self, wire_separation=d)

    @property
    def ybar(self) -> float:
        """Height mu0 I / (2 pi Bx) at which one wire cancels the x bias."""
        return self.constants.mu0 * self.current / (2.0 * math.pi * self.bias_x)

    @property
    def wire_positions(self) -> dict:
        if self.kind == "single-wire":
            return {"single": 0.0}
        return {g: EPSILON[g] * self.wire_separation / 2.0 for g in WIRE_LABELS}

    @property
    def r0(self) -> float:
        """Wire-to-trap distance (to the nearest wire)."""
        if self.kind == "single-wire":
            return self.ybar
        return wire_to_trap_distance(self.wire_separation, self.ybar)

    @property
    def omega(self) -> float:
        return trap_frequency(self)[0]

    @property
    def oscillator_length(self) -> float:
        return trap_frequency(self)[1]


@dataclass(frozen=True)
class TrapMinima:
    positions: dict  # label -> (x, y) in m
    regime: Literal["single", "horizontal", "vertical", "merged"]
    r0: float

    def x0(self, label: str) -> float:
        return self.positions[label][0]

    @property
    def y0(self) -> float:
        return next(iter(self.positions.values()))[1]


def wire_to_trap_distance(d: float, ybar: float) -> float:
    """Distance from a horizontal-regime minimum to its own wire."""
    inner = 1.0 - 4.0 * ybar**2 / d**2
    if inner < 0:
        raise RegimeError("wire separation below 2*ybar: no horizontal pair of minima")
    # (d/2 - |x0|)^2 + ybar^2, written without cancellation
    x0 = math.sqrt(d * d / 4.0 - ybar * ybar)
    gap = ybar * ybar / (d / 2.0 + x0)
    return math.sqrt(gap * gap + ybar * ybar)


def bfield(cfg: TrapConfiguration, pos) -> np.ndarray:
    """Total field (T) at transverse positions ``pos[..., 0:2] = (x, y)``.

    Returns an array of shape ``pos.shape[:-1] + (3,)``.
    """
    pos = np.asarray(pos, dtype=float)
    x, y = pos[..., 0], pos[..., 1]
    pref = cfg.constants.mu0 * cfg.current / (2.0 * math.pi)
    bx = np.full(x.shape, cfg.bias_x)
    by = np.zeros(x.shape)
    tiny = (1e-9 * cfg.ybar) ** 2
    for xw in cfg.wire_positions.values():
        dx = x - xw
        rho2 = dx * dx + y * y
        if np.any(rho2 <= tiny):
            raise SingularPointError(f"field evaluated on the wire at x = {xw:g} m")
        bx = bx - pref * y / rho2
        by = by + pref * dx / rho2
    bz = np.full(x.shape, cfg.bias_z)
    return np.stack([bx, by, bz], axis=-1)


def bmag(cfg: TrapConfiguration, pos) -> np.ndarray:
    return np.linalg.norm(bfield(cfg, pos), axis=-1)


def _analytic_minima(cfg: TrapConfiguration) -> TrapMinima:
    yb = cfg.ybar
    if cfg.kind == "single-wire":
        return TrapMinima({"single": (0.0, yb)}, "single", yb)
    d = cfg.wire_separation
    half = d / 2.0
    if math.isclose(d, 2.0 * yb, rel_tol=1e-12):
        return TrapMinima({"merged": (0.0, yb)}, "merged", math.hypot(half, yb))
    if d > 2.0 * yb:
        x0 = math.sqrt(half * half - yb * yb)
        return TrapMinima({"L": (-x0, yb), "R": (x0, yb)}, "horizontal", wire_to_trap_distance(d, yb))
    s = math.sqrt(yb * yb - half * half)
    lower = (0.0, yb - s)
    upper = (0.0, yb + s)
    return TrapMinima({"lower": lower, "upper": upper}, "vertical", math.hypot(half, yb - s))


@lru_cache(maxsize=512)
def trap_minima(cfg: TrapConfiguration, refine_tol: float = 1e-12) -> TrapMinima:
    """Locate the field minima analytically and cross-check numerically.

    Every analytic minimum is refined by minimising the transverse field
    (equivalently ``|B|``, since ``Bz`` is constant) from a slightly displaced
    start; disagreement beyond ``refine_tol`` metres flags a broken formula.
    Close to the merging point the zero becomes flat and the refined position
    is ill-conditioned, so a vanishing transverse field at the analytic point
    is accepted as well.  The merged minimum itself is not refined.
    """
    mins = _analytic_minima(cfg)
    if mins.regime == "merged":
        return mins
    scale = cfg.ybar

    def resid(p):
        b = bfield(cfg, p * scale)
        return b[:2] / cfg.bias_x

    for label, (x0, y0) in mins.positions.items():
        start = np.array([x0, y0]) / scale + 1e-3
        sol = least_squares(resid, start, xtol=1e-15, ftol=1e-15, gtol=1e-15)
        dist = float(np.hypot(*(sol.x * scale - np.array([x0, y0]))))
        residual = float(np.max(np.abs(resid(np.array([x0, y0]) / scale))))
        if dist > refine_tol and residual > 1e-10:
            raise ArithmeticError(f"minimum {label}: analytic and numerical positions differ by {dist:.3e} m")
    return mins


def trap_frequency(cfg: TrapConfiguration) -> tuple[float, float]:
    """Harmonic trap frequency (rad/s) and oscillator length (m).

    Single wire: ``omega = sqrt(2 muB g / (m Bz)) Bx / y0``.  Double wire:
    ``omega_d = 2 omega |x0| / d``, valid only for ``d > sqrt(8) ybar``.
    """
    c = cfg.constants
    omega = math.sqrt(2.0 * c.muB * c.g_eff / (c.atom_mass * cfg.bias_z)) * cfg.bias_x / cfg.ybar
    if cfg.kind == "double-wire":
        d, yb = cfg.wire_separation, cfg.ybar
        if d <= SQRT8 * yb:
            raise RegimeError(
                f"harmonic approximation invalid: d = {d / yb:.4g} ybar <= sqrt(8) ybar "
                "(minima too close; merged at d = 2 ybar)"
            )
        omega = 2.0 * omega * math.sqrt(d * d / 4.0 - yb * yb) / d
    w = math.sqrt(c.hbar / (c.atom_mass * omega))
    return omega, w


def field_gradient(cfg: TrapConfiguration) -> float:
    """Magnitude of the (isotropic) transverse field gradient at a minimum, T/m."""
    g = cfg.bias_x / cfg.ybar
    if cfg.kind == "double-wire":
        d, yb = cfg.wire_separation, cfg.ybar
        g *= 2.0 * math.sqrt(max(d * d / 4.0 - yb * yb, 0.0)) / d
    return g


@dataclass(frozen=True)
class FieldMap:
    x: np.ndarray
    y: np.ndarray
    magnitude: np.ndarray  # shape (len(y), len(x)), row-major in y
    minima: TrapMinima
    cuts: dict  # label -> {"x": (coords, |B|, harmonic), "y": (...)}


def field_map(cfg: TrapConfiguration, x, y) -> FieldMap:
    """Sample ``|B|`` on the rectangular grid ``x`` by ``y`` plus cuts through each minimum.

    Each cut also carries the harmonic approximation
    ``Bz + G**2 r**2 / (2 Bz)`` about the minimum.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    X, Y = np.meshgrid(x, y)
    mag = bmag(cfg, np.stack([X, Y], axis=-1))
    mins = _analytic_minima(cfg)
    g = field_gradient(cfg)
    cuts = {}
    for label, (x0, y0) in mins.positions.items():
        hx = bmag(cfg, np.stack([x, np.full_like(x, y0)], axis=-1))
        hy = bmag(cfg, np.stack([np.full_like(y, x0), y], axis=-1))
        harm_x = cfg.bias_z + g * g * (x - x0) ** 2 / (2.0 * cfg.bias_z)
        harm_y = cfg.bias_z + g * g * (y - y0) ** 2 / (2.0 * cfg.bias_z)
        cuts[label] = {"x": (x, hx, harm_x), "y": (y, hy, harm_y)}
    return FieldMap(x, y, mag, mins, cuts)


def grid_local_minima(fm: FieldMap) -> list[tuple[float, float]]:
    """Strict interior local minima of a sampled field map (8-neighbourhood)."""
    m = fm.magnitude
    found = []
    for iy in range(1, m.shape[0] - 1):
        for ix in range(1, m.shape[1] - 1):
            patch = m[iy - 1 : iy + 2, ix - 1 : ix + 2]
            centre = m[iy, ix]
            if centre == patch.min() and np.count_nonzero(patch == centre) == 1:
                found.append((float(fm.x[ix]), float(fm.y[iy])))
    return found
