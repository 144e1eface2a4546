"""Current-noise correlators, spatial kernels and transition matrix elements.

The basic object is the pair kernel

    J(a, b; zeta) = int dz [a^2 + z^2]^(-3/2) [b^2 + (zeta - z)^2]^(-3/2),

the overlap of the field fluctuations that a current element on a wire
produces at two points a distance ``a`` and ``b`` from that wire, separated by
``zeta`` along it.  For a single wire ``a = b = r0`` and
``J(zeta) = r0**-5 j(zeta / r0)`` with a universal function ``j``, which is
tabulated once per process.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal

import numpy as np
from scipy import constants as sc
from scipy.interpolate import PchipInterpolator

from .errors import ConfigError, RegimeError
from .modes import Mode, ModeBasis, ladder
from .numerics import QUAD_RTOL, InterpTable, bisect, integrate_infinite
from .trapgeom import EPSILON, SQRT8, TrapConfiguration, bfield, trap_frequency, trap_minima

J0 = 3.0 * math.pi / 8.0  # j(0)
APPROX_C = (32.0 / (3.0 * math.pi)) ** (2.0 / 3.0)
PHI_INF = 2.0  # int_0^inf j(s) ds

TABLE_POINTS = 256
TABLE_RANGE = (1e-3, 1e3)
MARKOV_MARGIN = 1e-3


# --------------------------------------------------------------------------
# noise source


@dataclass(frozen=True)
class NoiseParams:
    """Johnson-Nyquist current noise of a thin wire.

    ``tau_c`` and ``screening_length`` are kept as metadata; the dynamics is
    strictly Markovian.  The charge-relaxation frequency
    ``omega_RC = sigma * Lambda / (eps0 * l_w)`` bounds the trap frequencies
    for which longitudinal current noise is the relevant source.
    """

    T_eff: float = 300.0
    sigma: float = 4.54e7
    cross_section: float = 2.5e-6 * 5e-6
    tau_c: float | None = None
    screening_length: float = 1e-10
    wire_width: float = 5e-6
    eps0: float = 8.8541878128e-12

    def __post_init__(self):
        if self.T_eff < 0:
            raise ValueError("T_eff must be non-negative")
        if not self.sigma > 0 or not self.cross_section > 0:
            raise ValueError("conductivity and cross-section must be positive")
        if not self.screening_length > 0 or not self.wire_width > 0:
            raise ValueError("screening length and wire width must be positive")
        if self.tau_c is not None and self.tau_c < 0:
            raise ValueError("tau_c must be non-negative")

    @classmethod
    def from_config(cls, cfg: TrapConfiguration, **kw) -> "NoiseParams":
        return cls(cfg.noise_temperature, cfg.conductivity, cfg.cross_section, eps0=cfg.constants.eps0, **kw)

    @property
    def omega_RC(self) -> float:
        return self.sigma * self.screening_length / (self.eps0 * self.wire_width)

    @property
    def current_psd(self) -> float:
        """Strength ``4 kB T sigma A`` of the delta-correlated current noise (SI, kB from CODATA)."""
        return 4.0 * sc.k * self.T_eff * self.sigma * self.cross_section

    def markov_valid(self, omega: float) -> bool:
        return omega < MARKOV_MARGIN * self.omega_RC

    def check_markov(self, omega: float) -> bool:
        ok = self.markov_valid(omega)
        if not ok:
            warnings.warn(
                f"trap frequency {omega:.3e} rad/s is not well below omega_RC = {self.omega_RC:.3e} rad/s",
                RuntimeWarning,
                stacklevel=2,
            )
        return ok


# --------------------------------------------------------------------------
# spatial kernels


def pair_kernel(a: float, b: float, zeta: float, tol: float = QUAD_RTOL) -> float:
    """``J(a, b; zeta)`` by adaptive quadrature (units 1/m^5 for SI inputs)."""
    if not a > 0 or not b > 0:
        raise ValueError("distances to the wire must be positive")
    zeta = float(zeta)
    a2, b2 = a * a, b * b

    def f(z):
        u = a2 + z * z
        v = b2 + (zeta - z) ** 2
        return 1.0 / (u * math.sqrt(u) * v * math.sqrt(v))

    if abs(zeta) < 1e-12 * min(a, b):
        res = integrate_infinite(f, tol, points=(0.0,), scales=(min(a, b),))
    else:
        res = integrate_infinite(f, tol, points=(0.0, zeta), scales=(a, b))
    return res.value


def j_kernel_single(zeta: float, r0: float, tol: float = QUAD_RTOL) -> float:
    """Single-wire spatial kernel ``J(zeta)`` at wire-to-trap distance ``r0``."""
    if not r0 > 0:
        raise ValueError("r0 must be positive")
    return pair_kernel(r0, r0, zeta, tol)


def _cumulative_unit(s: float, tol: float = QUAD_RTOL) -> float:
    """``phi(s) = int_0^s j``, written as one convergent line integral."""

    def f(u):
        g = 1.0 + u * u
        x = s - u
        return (x / math.sqrt(1.0 + x * x) + u / math.sqrt(g)) / (g * math.sqrt(g))

    return integrate_infinite(f, tol, points=(0.0, s), scales=(1.0, 1.0)).value


@dataclass(frozen=True)
class UnitTables:
    s: np.ndarray
    j: np.ndarray
    phi: np.ndarray
    j_table: InterpTable
    phi_low: PchipInterpolator  # log phi against log s, s <= 1
    phi_high: PchipInterpolator  # log(phi_inf - phi) against log s, s >= 1


@lru_cache(maxsize=1)
def unit_tables() -> UnitTables:
    """Dimensionless ``j(s)`` and ``phi(s)`` on a geometric grid (built once per process).

    ``phi`` is interpolated through ``phi`` itself below ``s = 1`` and through
    the remaining tail ``2 - phi`` above, both on log-log axes, so that
    differences of the antiderivative keep their relative accuracy.
    """
    s = np.geomspace(*TABLE_RANGE, TABLE_POINTS)
    j = np.array([pair_kernel(1.0, 1.0, x) for x in s])
    phi = np.array([_cumulative_unit(x) for x in s])
    tail = np.array([_tail_unit(x) for x in s])
    low = s <= 1.0
    high = s >= 1.0
    return UnitTables(
        s, j, phi,
        InterpTable(s, j, J0, -3.0),
        PchipInterpolator(np.log(s[low]), np.log(phi[low])),
        PchipInterpolator(np.log(s[high]), np.log(tail[high])),
    )


def _tail_unit(s: float, tol: float = QUAD_RTOL) -> float:
    """``phi_inf - phi(s) = int_s^inf j``, computed directly to keep relative accuracy."""

    def f(u):
        g = 1.0 + u * u
        x = s - u
        return (1.0 - x / math.sqrt(1.0 + x * x)) / (g * math.sqrt(g))

    return integrate_infinite(f, tol, points=(0.0, s), scales=(1.0, 1.0)).value


def unit_kernel(s):
    """Tabulated ``j(s)``, even in ``s``."""
    return unit_tables().j_table(s)


def unit_cumulative(s):
    """Tabulated odd antiderivative ``Phi(s) = int_0^s j``."""
    t = unit_tables()
    s = np.asarray(s, dtype=float)
    a = np.abs(s)
    out = np.empty_like(a)
    lo = a < t.s[0]
    hi = a > t.s[-1]
    mid_lo = ~lo & (a <= 1.0)
    mid_hi = ~hi & (a > 1.0)
    out[mid_lo] = np.exp(t.phi_low(np.log(a[mid_lo])))
    out[mid_hi] = PHI_INF - np.exp(t.phi_high(np.log(a[mid_hi])))
    # phi = j(0) s (1 - O(s^2)) below, phi_inf - 2/s^2 above the table
    out[lo] = t.phi[0] * a[lo] / t.s[0]
    out[hi] = PHI_INF - (PHI_INF - t.phi[-1]) * (t.s[-1] / a[hi]) ** 2
    out = np.copysign(out, s)
    return out if out.ndim else float(out)


# --------------------------------------------------------------------------
# rates


def a0_prefactor(cfg: TrapConfiguration) -> float:
    """``A0 = kB T sigma A (mu0 g muB Bx / (pi Bz))^2 w^2 / 2`` (J^2 m).

    ``w`` is the oscillator length of the configuration (the double-wire trap
    uses its own, softer frequency).
    """
    c = cfg.constants
    _, w = trap_frequency(cfg)
    coupling = c.mu0 * c.g_eff * c.muB * cfg.bias_x / (math.pi * cfg.bias_z)
    return c.kB * cfg.noise_temperature * cfg.conductivity * cfg.cross_section * coupling**2 * w * w / 2.0


def rate_at_zero_closed_form(cfg: TrapConfiguration) -> float:
    """Single-wire ``A(0)`` written explicitly in the trap parameters; scales as ``r0**-4``."""
    c = cfg.constants
    return (
        1.5 * math.pi
        * c.kB * cfg.noise_temperature * cfg.conductivity * cfg.cross_section
        * cfg.bias_x / (2.0 * c.hbar * math.sqrt(c.atom_mass))
        * (c.mu0 / (4.0 * math.pi)) ** 2
        * (2.0 * c.muB * c.g_eff / cfg.bias_z) ** 1.5
        / cfg.ybar**4
    )


@dataclass(frozen=True)
class CorrelationKernel:
    """Rate function ``A(zeta) = A0 J(zeta) / hbar^2`` of a single wire (1/s).

    ``mode="exact"`` evaluates the tabulated convolution kernel (with
    :meth:`exact` available for direct quadrature); ``mode="approx"`` uses the
    closed Lorentzian-type form ``4 P [c + (zeta/r0)^2]^(-3/2)`` with
    ``c = (32 / 3 pi)^(2/3)``, which coincides with the exact value at zero.
    """

    A0: float
    r0: float
    hbar: float
    mode: Literal["exact", "approx"] = "exact"

    def __post_init__(self):
        if self.mode not in ("exact", "approx"):
            raise ValueError("mode must be 'exact' or 'approx'")
        if not self.r0 > 0 or self.A0 < 0:
            raise ValueError("need r0 > 0 and A0 >= 0")
        if self.mode == "exact":
            unit_tables()

    @classmethod
    def from_config(cls, cfg: TrapConfiguration, mode: str = "exact") -> "CorrelationKernel":
        if cfg.kind != "single-wire":
            raise RegimeError("the scalar rate kernel is defined for the single-wire trap")
        return cls(a0_prefactor(cfg), cfg.r0, cfg.constants.hbar, mode)

    @property
    def scale(self) -> float:
        """``P = A0 / (hbar^2 r0^5)`` (1/s)."""
        return self.A0 / (self.hbar**2 * self.r0**5)

    @property
    def at_zero(self) -> float:
        return J0 * self.scale

    def __call__(self, zeta):
        x = np.asarray(zeta, dtype=float) / self.r0
        if self.mode == "exact":
            out = self.scale * np.asarray(unit_kernel(x))
        else:
            out = 4.0 * self.scale * (APPROX_C + x * x) ** -1.5
        return out if out.ndim else float(out)

    def exact(self, zeta: float, tol: float = QUAD_RTOL) -> float:
        """Direct quadrature of the convolution kernel (ignores ``mode``)."""
        return self.scale * pair_kernel(1.0, 1.0, float(zeta) / self.r0, tol)

    def decoherence_rate(self, zeta):
        """``A(0) - A(zeta)``."""
        return self.at_zero - self(zeta)

    def antiderivative(self, zeta):
        """Odd antiderivative ``int_0^zeta A(u) du`` (m/s)."""
        x = np.asarray(zeta, dtype=float) / self.r0
        if self.mode == "exact":
            out = self.scale * self.r0 * np.asarray(unit_cumulative(x))
        else:
            out = 4.0 * self.scale * self.r0 * x / (APPROX_C * np.sqrt(APPROX_C + x * x))
        return out if out.ndim else float(out)

    def integral(self, a, b):
        """``int_a^b A(u) du``."""
        return self.antiderivative(b) - self.antiderivative(a)

    def correlation_length(self) -> float:
        """Separation at which ``A(0) - A(zeta)`` reaches ``A(0) / 2``."""
        return bisect(lambda z: self(z) - 0.5 * self.at_zero, 0.0, 100.0 * self.r0, rtol=1e-10)


def rate_A(zeta, cfg: TrapConfiguration, mode: str = "exact"):
    """Single-wire rate function ``A(zeta)`` (1/s)."""
    return CorrelationKernel.from_config(cfg, mode)(zeta)


# --------------------------------------------------------------------------
# double-wire geometry


def _horizontal(cfg: TrapConfiguration):
    if cfg.kind != "double-wire":
        raise RegimeError("configuration is not a double-wire trap")
    mins = trap_minima(cfg)
    if mins.regime != "horizontal":
        raise RegimeError(f"double-wire kernels need the horizontal regime d > 2 ybar (got {mins.regime})")
    return mins


def wire_distance(cfg: TrapConfiguration, trap: str, wire: str) -> float:
    """Distance from the minimum of trap ``trap`` to wire ``wire``."""
    mins = _horizontal(cfg)
    x0, y0 = mins.positions[trap]
    return math.hypot(x0 - EPSILON[wire] * cfg.wire_separation / 2.0, y0)


def j_kernel_double(cfg: TrapConfiguration, alpha: str, beta: str, gamma: str, zeta: float = 0.0,
                    tol: float = QUAD_RTOL) -> float:
    """``J^gamma_{alpha beta}(zeta)``: noise of wire ``gamma`` seen by traps ``alpha`` and ``beta``."""
    for lab in (alpha, beta, gamma):
        if lab not in EPSILON:
            raise ValueError(f"unknown trap/wire label {lab!r}")
    return pair_kernel(wire_distance(cfg, alpha, gamma), wire_distance(cfg, beta, gamma), zeta, tol)


def admixture(cfg: TrapConfiguration, trap: str, wire: str) -> float:
    """Weight ``eps_alpha y0 / (x0^alpha + eps_gamma d/2)`` of x transitions relative to y transitions."""
    mins = _horizontal(cfg)
    x0, y0 = mins.positions[trap]
    return EPSILON[trap] * y0 / (x0 + EPSILON[wire] * cfg.wire_separation / 2.0)


def gamma_large_d_rate(cfg: TrapConfiguration) -> float:
    """Decay rate of the trap-off-diagonal ground-state coherence keeping only each trap's own wire."""
    mins = _horizontal(cfg)
    d, yb = cfg.wire_separation, cfg.ybar
    x0 = abs(mins.x0("R"))
    A0 = a0_prefactor(cfg)
    hbar = cfg.constants.hbar
    return 1.5 * math.pi / hbar**2 * A0 * x0**2 / d**2 * (1.0 + yb**2 / (x0 + d / 2.0) ** 2) / mins.r0**5


# --------------------------------------------------------------------------
# transition elements


def _check_mode(mode, basis: ModeBasis | None):
    mode = Mode(*mode)
    if basis is not None and mode not in basis:
        raise IndexError(f"mode {mode} is outside the truncated basis")
    if mode.nx < 0 or mode.ny < 0:
        raise IndexError(f"mode {mode} has negative quanta")
    return mode


def _factor_single(i: Mode, m: Mode) -> float:
    if i.trap != m.trap:
        return 0.0
    return (1.0 if i.nx == m.nx else 0.0) * ladder(i.ny, m.ny)


def _factor_double(cfg, i: Mode, m: Mode, wire: str) -> float:
    if i.trap != m.trap:
        return 0.0
    y_part = (1.0 if i.nx == m.nx else 0.0) * ladder(i.ny, m.ny)
    x_part = ladder(i.nx, m.nx) * (1.0 if i.ny == m.ny else 0.0)
    if x_part == 0.0:
        return y_part
    return y_part + x_part * admixture(cfg, i.trap, wire)


def transition_elements(cfg: TrapConfiguration, i, m, n, j, basis: ModeBasis | None = None):
    """Dimensionless coefficient of ``<dS_im dS_nj>`` in units of ``A0 * J``.

    Single wire: a float.  Double wire: a dict ``wire -> coefficient`` that
    includes the geometric factor ``4 x0^alpha x0^beta / d^2``; the
    correlator is ``A0 * sum_wire coeff[wire] * J^wire_{alpha beta}``.
    """
    i, m, n, j = (_check_mode(q, basis) for q in (i, m, n, j))
    if cfg.kind == "single-wire":
        for q in (i, m, n, j):
            if q.trap != "single":
                raise IndexError(f"mode {q} does not belong to the single-wire trap")
        return _factor_single(i, m) * _factor_single(n, j)
    d = cfg.wire_separation
    if d <= SQRT8 * cfg.ybar:
        raise RegimeError("double-wire transition elements need d > sqrt(8) ybar")
    mins = _horizontal(cfg)
    for q in (i, m, n, j):
        if q.trap not in ("L", "R"):
            raise IndexError(f"mode {q} does not belong to a double-wire trap")
    geo = 4.0 * mins.x0(i.trap) * mins.x0(n.trap) / d**2
    return {
        g: geo * _factor_double(cfg, i, m, g) * _factor_double(cfg, n, j, g)
        for g in ("L", "R")
    }


@dataclass(frozen=True)
class TransitionTable:
    """All coefficients ``A_imnj / A0`` over a basis, one array per wire.

    ``coeff[wire][i, m, n, j]`` multiplies ``A0 * J^wire_{trap(i) trap(n)}``.
    """

    basis: ModeBasis
    A0: float
    coeff: dict = field(repr=False)

    def __getitem__(self, key):
        return self.coeff[key]

    @property
    def wires(self) -> tuple:
        return tuple(self.coeff)


def transition_table(cfg: TrapConfiguration, basis: ModeBasis) -> TransitionTable:
    n = len(basis)
    wires = ("single",) if cfg.kind == "single-wire" else ("L", "R")
    coeff = {w: np.zeros((n, n, n, n)) for w in wires}
    modes = basis.modes
    for a, i in enumerate(modes):
        for b, m in enumerate(modes):
            if i.trap != m.trap:
                continue
            for c, nn in enumerate(modes):
                for e, j in enumerate(modes):
                    if nn.trap != j.trap:
                        continue
                    val = transition_elements(cfg, i, m, nn, j)
                    if cfg.kind == "single-wire":
                        coeff["single"][a, b, c, e] = val
                    else:
                        for w in wires:
                            coeff[w][a, b, c, e] = val[w]
    return TransitionTable(basis, a0_prefactor(cfg), coeff)


# --------------------------------------------------------------------------
# full potential correlator


def potential_correlator(x, xp, cfg: TrapConfiguration, tol: float = QUAD_RTOL) -> float:
    """Static factor of ``<dV(x) dV(x')>`` for points ``x, x'`` given as ``(x, y, z)`` (J^2).

    The mean moment follows the local field, ``mu = 2 muB g B(x) / Bz``, and
    each wire contributes ``(mu(x).u(x)) (mu(x').u(x')) J(x, x')`` with
    ``u = (y, -(x - d_wire), 0)``.
    """
    c = cfg.constants
    x = np.asarray(x, dtype=float)
    xp = np.asarray(xp, dtype=float)
    if x.shape != (3,) or xp.shape != (3,):
        raise ValueError("points must be 3-vectors (x, y, z)")
    if cfg.noise_temperature == 0.0:
        bfield(cfg, x[:2])
        bfield(cfg, xp[:2])
        return 0.0
    bx = bfield(cfg, x[:2])
    bxp = bfield(cfg, xp[:2])
    mu = 2.0 * c.muB * c.g_eff * bx / cfg.bias_z
    mup = 2.0 * c.muB * c.g_eff * bxp / cfg.bias_z
    pref = 4.0 * c.kB * cfg.noise_temperature * cfg.conductivity * cfg.cross_section * (c.mu0 / (4.0 * math.pi)) ** 2
    total = 0.0
    for xw in cfg.wire_positions.values():
        u = np.array([x[1], -(x[0] - xw), 0.0])
        up = np.array([xp[1], -(xp[0] - xw), 0.0])
        a = math.hypot(x[0] - xw, x[1])
        b = math.hypot(xp[0] - xw, xp[1])
        total += float(mu @ u) * float(mup @ up) * pair_kernel(a, b, x[2] - xp[2], tol)
    return pref * total


# --------------------------------------------------------------------------
# order-of-magnitude table


TABLE1_ROWS = ("zero", "small", "intermediate", "large")


def table1_asymptotics(row: str, ybar: float, d: float, zeta: float = 0.0) -> tuple[float, float, float]:
    """Closed-form scaling estimates ``(J^L_LL, J^L_LR, J^L_RR)`` for ``ybar << d``.

    ``row`` selects the separation regime: ``"zero"`` (zeta = 0), ``"small"``
    (zeta << ybar), ``"intermediate"`` (ybar << zeta << d), ``"large"``
    (d << zeta).  The entries fix exponents, not unit coefficients.
    """
    if row not in TABLE1_ROWS:
        raise ConfigError(f"unknown regime {row!r}; expected one of {TABLE1_ROWS}", "row")
    if not (ybar > 0 and d > 0):
        raise ValueError("ybar and d must be positive")
    if row == "zero":
        return 1.0 / ybar**5, 2.0 / (ybar**2 * d**3), 1.0 / d**5
    if row == "small":
        return 1.0 / ybar**5, 2.0 / (d**3 * ybar**2) * (1.0 - 1.5 * ybar**2 / d**2), 1.0 / d**5
    z = abs(zeta)
    if z == 0.0:
        raise ValueError(f"row {row!r} needs a non-zero zeta")
    if row == "intermediate":
        return 4.0 / (ybar**2 * z**3), 2.0 / (d**3 * ybar**2) * (1.0 - 1.5 * z**2 / d**2), 1.0 / d**5
    return 4.0 / (ybar**2 * z**3), 2.0 / z**3 * (1.0 / ybar**2 + 1.0 / d**2), 4.0 / (d**2 * z**3)
