"""Time evolution of the two-level single-wire system and the double-wire coherence.

Single wire: in the basis ``rho_pm = rho00 +- rho11`` (and likewise for the
transverse coherences) every longitudinal Fourier component ``k`` of the
density matrix evolves independently,

    rho^pm_k(zm, zp, t) = R^pm_k(zm - v t) exp(i k zp) exp(-A(0) t +- D_k(zm, t)),
    D_k(zm, t) = int_0^t A(zm - v t') dt',     v = hbar k / m,

with ``zm = z - z'`` and ``zp = (z + z') / 2``.  The coherences are returned
in the frame co-rotating with the transverse level splitting.

Double wire: the component vector evolves as ``exp(-G t) rho(0)`` with the
5x5 generator; free longitudinal motion is factored out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import NoRootError, RegimeError
from .generator import double_wire_generator
from .noisekernel import CorrelationKernel, gamma_large_d_rate
from .numerics import (
    ROOT_RTOL,
    SPECTRAL_TAIL,
    bisect,
    integrate_finite,
    matrix_exponential,
    spectral_synthesize,
)
from .trapgeom import RB87_MASS, SQRT8, TrapConfiguration

TIME_QUAD_RTOL = 1e-8
CONSTANT_INTEGRAND = 1e-3  # |v t| / r0 below which A is constant along the path
N_K = 4097
SPECTRUM_FLOOR = 1e-12  # initial spectrum at the k-grid edge, relative to its peak

_GL_X, _GL_W = np.polynomial.legendre.leggauss(32)
_GL_SPAN = 4.0  # |v t| / r0 up to which the path integral uses fixed Gauss-Legendre


# --------------------------------------------------------------------------
# single wire: rates


def _check_sign(sign) -> int:
    if sign in (+1, "+", "plus"):
        return 1
    if sign in (-1, "-", "minus"):
        return -1
    raise ValueError("sign must be +1 or -1")


def path_integral(kernel: CorrelationKernel, zeta, v, t: float):
    """``D = int_0^t A(zeta - v t') dt'``, vectorised over broadcast ``zeta`` and ``v``.

    Short paths use 32-point Gauss-Legendre on the kernel, long ones the
    tabulated antiderivative, so the ``v -> 0`` limit is regular.
    """
    zeta = np.asarray(zeta, dtype=float)
    v = np.asarray(v, dtype=float)
    zeta, v = np.broadcast_arrays(zeta, v)
    span = v * t
    out = np.empty(zeta.shape)
    short = np.abs(span) <= _GL_SPAN * kernel.r0
    if np.any(short):
        zs, ss = zeta[short], span[short]
        # t' = t (x + 1) / 2
        pts = zs[..., None] - ss[..., None] * 0.5 * (_GL_X + 1.0)
        out[short] = 0.5 * t * (np.asarray(kernel(pts)) @ _GL_W)
    longp = ~short
    if np.any(longp):
        zl, sl = zeta[longp], span[longp]
        out[longp] = (kernel.antiderivative(zl) - kernel.antiderivative(zl - sl)) * (t / sl)
    return out if out.ndim else float(out)


def gamma_pm(k: float, zeta: float, t: float, kernel: CorrelationKernel, sign=+1,
             mass: float = RB87_MASS, tol: float = TIME_QUAD_RTOL) -> float:
    """``Gamma^pm_k(zeta, t) = A(0) -+ (1/t) int_0^t A(zeta - hbar k t' / m) dt'`` (1/s).

    The time average is computed by adaptive quadrature over the kernel.
    """
    s = _check_sign(sign)
    if not t > 0:
        raise ValueError("t must be positive")
    v = kernel.hbar * k / mass
    if abs(v) * t < CONSTANT_INTEGRAND * kernel.r0:
        avg = float(kernel(zeta))
    else:
        # the kernel peaks where the path crosses zero separation
        peak = zeta / v
        pts = [peak + f * kernel.r0 / abs(v) for f in (-3.0, 0.0, 3.0)]
        avg = integrate_finite(lambda tp: float(kernel(zeta - v * tp)), 0.0, t, tol, points=pts) / t
    return kernel.at_zero - s * avg


def traced_decay(zeta, t, init: tuple, kernel: CorrelationKernel):
    """Ground-state component traced over the centre of mass.

    ``init = (rho00(zeta, 0), rho11(zeta, 0))`` (arrays broadcast against ``zeta``).
    """
    a0 = kernel.at_zero
    az = np.asarray(kernel(zeta))
    t = np.asarray(t, dtype=float)
    r00, r11 = (np.asarray(x) for x in init)
    e2 = np.exp(-2.0 * az * t)
    out = np.exp(-(a0 - az) * t) * 0.5 * (r00 * (1.0 + e2) + r11 * (1.0 - e2))
    return out if out.ndim else out.item()


# --------------------------------------------------------------------------
# single wire: wavepacket


@dataclass(frozen=True)
class GaussianPacket:
    """Gaussian longitudinal wavepacket with a transverse superposition.

    ``width`` is the standard deviation of the density ``|psi(z)|^2``.  The
    spatial coherence across ``zeta_minus`` is Gaussian with standard
    deviation ``coherence_length`` (``2 * width`` for a pure state;
    ``inf`` gives ``zeta_minus``-independent data).  ``amplitudes = (c0, c1)``
    weight the transverse components as ``rho_lk ~ c_l conj(c_k)``.
    The ``k = 0``, ``zeta_minus = 0`` trace component equals
    ``|c0|^2 + |c1|^2``.
    """

    width: float
    center: float = 0.0
    k0: float = 0.0
    amplitudes: tuple = (1.0, 0.0)
    coherence_length: float | None = None

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError("packet width must be positive")
        if len(self.amplitudes) != 2:
            raise ValueError("amplitudes must be a pair (c0, c1)")
        if self.coherence_length is not None and not self.coherence_length > 0:
            raise ValueError("coherence length must be positive")

    @property
    def ell(self) -> float:
        return 2.0 * self.width if self.coherence_length is None else self.coherence_length

    def weights(self) -> dict:
        c0, c1 = (complex(c) for c in self.amplitudes)
        return {
            "rho00": abs(c0) ** 2,
            "rho11": abs(c1) ** 2,
            "rho10": c1 * c0.conjugate(),
            "rho01": c0 * c1.conjugate(),
        }

    def profile(self, zeta_minus, k):
        """Unit-weight spectral profile ``R_k(zeta_minus)`` (broadcasting)."""
        zm = np.asarray(zeta_minus, dtype=float)
        k = np.asarray(k, dtype=float)
        expo = -1j * k * self.center - 0.5 * (k * self.width) ** 2 + 1j * self.k0 * zm
        if math.isfinite(self.ell):
            expo = expo - zm**2 / (2.0 * self.ell**2)
        return np.exp(expo)

    def density(self, zeta_minus, zeta_plus):
        """Unit-weight initial field ``rho(zeta_minus, zeta_plus)`` on an outer-product grid."""
        zm = np.asarray(zeta_minus, dtype=float)[:, None]
        zp = np.asarray(zeta_plus, dtype=float)[None, :]
        expo = -((zp - self.center) ** 2) / (2.0 * self.width**2) + 1j * self.k0 * zm
        if math.isfinite(self.ell):
            expo = expo - zm**2 / (2.0 * self.ell**2)
        return np.exp(expo) / math.sqrt(2.0 * math.pi * self.width**2)

    def k_grid(self, n_k: int = N_K, floor: float = SPECTRUM_FLOOR) -> np.ndarray:
        """Symmetric uniform grid containing ``k = 0`` (odd ``n_k``) wide enough that the
        Gaussian spectrum at its edge is below ``floor`` of the peak."""
        if n_k < 3 or n_k % 2 == 0:
            raise ValueError("n_k must be odd and >= 3 so the grid is symmetric about k = 0")
        kmax = math.sqrt(2.0 * math.log(1.0 / floor)) / self.width
        return np.linspace(-kmax, kmax, n_k)


@dataclass(frozen=True)
class DensityField:
    """Density components on a ``(zeta_minus, zeta_plus)`` grid at time ``t``."""

    zeta_minus: np.ndarray
    zeta_plus: np.ndarray
    t: float
    components: dict = field(repr=False)

    def __getitem__(self, name):
        return self.components[name]

    @property
    def names(self) -> tuple:
        return tuple(self.components)

    def hermiticity_residual(self) -> float:
        """``max |rho01(zm, zp) - conj(rho10(-zm, zp))|`` (needs a mirror-symmetric ``zeta_minus`` grid)."""
        zm = self.zeta_minus
        if not np.allclose(zm[::-1], -zm, rtol=0.0, atol=1e-12 * max(np.abs(zm).max(), 1e-300)):
            raise ValueError("hermiticity check needs a zeta_minus grid symmetric about zero")
        r10, r01 = self.components["rho10"], self.components["rho01"]
        res = np.abs(r01 - np.conj(r10[::-1, :])).max(initial=0.0)
        pop = np.abs(self.components["rho00"] - np.conj(self.components["rho00"][::-1, :])).max(initial=0.0)
        return float(max(res, pop))

    def trace_plus(self, name: str) -> np.ndarray:
        """Trapezoidal integral over ``zeta_plus`` of one component."""
        return np.trapezoid(self.components[name], self.zeta_plus, axis=1)


def spectral_components(packet: GaussianPacket, kernel: CorrelationKernel, k, zeta_minus, t: float,
                        mass: float = RB87_MASS) -> dict:
    """Fourier components ``rho_k(zeta_minus, t)`` of all four density elements.

    ``k`` has shape ``(n_k,)`` and ``zeta_minus`` shape ``(n_m,)``; each
    returned array has shape ``(n_m, n_k)``.
    """
    k = np.asarray(k, dtype=float)
    zm = np.asarray(zeta_minus, dtype=float)[:, None]
    v = kernel.hbar * k[None, :] / mass
    base = packet.profile(zm - v * t, k[None, :])
    if t == 0:
        ep = em = np.ones(base.shape)
    else:
        D = path_integral(kernel, zm, v, t)
        a0t = kernel.at_zero * t
        ep = np.exp(-a0t + D)
        em = np.exp(-a0t - D)
    w = packet.weights()
    p_plus, p_minus = w["rho00"] + w["rho11"], w["rho00"] - w["rho11"]
    q_plus, q_minus = w["rho10"] + w["rho01"], w["rho10"] - w["rho01"]
    plus, minus = base * ep, base * em
    return {
        "rho00": 0.5 * (p_plus * plus + p_minus * minus),
        "rho11": 0.5 * (p_plus * plus - p_minus * minus),
        "rho10": 0.5 * (q_plus * plus + q_minus * minus),
        "rho01": 0.5 * (q_plus * plus - q_minus * minus),
        "plus": p_plus * plus,
        "minus": p_minus * minus,
    }


def evolve_single(packet: GaussianPacket, kernel: CorrelationKernel, t: float, zeta_minus, zeta_plus,
                  n_k: int = N_K, mass: float = RB87_MASS, tail: float = SPECTRAL_TAIL) -> DensityField:
    """Evolve a Gaussian packet in the two-level single-wire system and synthesise it on a grid.

    Raises
    ------
    ResolutionError
        If any component's spectrum at the k-grid edge exceeds ``tail`` of its peak.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    k = packet.k_grid(n_k)
    comps = spectral_components(packet, kernel, k, zeta_minus, t, mass)
    out = {}
    for name in ("rho00", "rho11", "rho10", "rho01"):
        c = comps[name]
        if np.any(c):
            out[name] = spectral_synthesize(c, k, zeta_plus, tail=tail)
        else:
            out[name] = np.zeros((len(np.atleast_1d(zeta_minus)), len(np.atleast_1d(zeta_plus))), complex)
    return DensityField(np.asarray(zeta_minus, float), np.asarray(zeta_plus, float), float(t), out)


# --------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class DecayReport:
    """Summary rates.  Absent quantities are ``None``."""

    zeta: np.ndarray | None = None
    gamma_dec: np.ndarray | None = None
    gamma_pop: float | None = None
    t_half: float | None = None
    times: np.ndarray | None = None
    gamma_t: np.ndarray | None = None

    def __post_init__(self):
        if self.t_half is not None and not self.t_half > 0:
            raise ValueError("T_1/2 must be positive")


def single_wire_report(kernel: CorrelationKernel, zeta) -> DecayReport:
    """Spatial decoherence rate ``A(0) - A(zeta)`` and population equilibration rate ``2 A(0)``.

    ``t_half`` is the time for the population imbalance ``rho00 - rho11`` at
    zero separation to halve.
    """
    zeta = np.asarray(zeta, dtype=float)
    a0 = kernel.at_zero
    if a0 == 0.0:
        return DecayReport(zeta, np.zeros_like(zeta), 0.0, None)
    return DecayReport(zeta, kernel.decoherence_rate(zeta), 2.0 * a0, math.log(2.0) / (2.0 * a0))


# --------------------------------------------------------------------------
# double wire


def _initial_vector(init) -> np.ndarray:
    if init is None:
        return np.array([1.0, 0.0, 0.0, 0.0, 0.0])
    v = np.asarray(init, dtype=complex if np.iscomplexobj(init) else float)
    if v.shape != (5,):
        raise ValueError("initial vector must have 5 components")
    return v


def _require_harmonic(cfg: TrapConfiguration):
    if cfg.kind != "double-wire":
        raise RegimeError("double-wire evolution needs a double-wire configuration")
    if cfg.wire_separation <= SQRT8 * cfg.ybar:
        raise RegimeError(
            f"d = {cfg.wire_separation / cfg.ybar:.4g} ybar does not exceed sqrt(8) ybar; "
            "the two traps are not independent harmonic wells"
        )


def evolve_double(cfg: TrapConfiguration, beta_mode: str, t, init=None, zeta: float = 0.0, generator=None):
    """``exp(-G t) rho(0)`` for the double-wire component vector (dissipative factor only).

    ``t`` may be a scalar or a 1-D array; the result has shape ``(5,)`` or ``(len(t), 5)``.
    """
    _require_harmonic(cfg)
    G = (generator if generator is not None else double_wire_generator(cfg, beta_mode, zeta)).matrix
    v = _initial_vector(init)
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(ts < 0):
        raise ValueError("t must be non-negative")
    out = np.array([matrix_exponential(-G, tt) @ v for tt in ts])
    return out[0] if np.ndim(t) == 0 else out


def gamma_t(cfg: TrapConfiguration, beta_mode: str, times, init=None, generator=None) -> np.ndarray:
    """``Gamma(t) = -ln(rho^00_00(t) / rho^00_00(0)) / t`` (natural log; 1/s)."""
    times = np.asarray(times, dtype=float)
    if np.any(times <= 0):
        raise ValueError("times must be positive")
    G = generator if generator is not None else double_wire_generator(cfg, beta_mode)
    v = _initial_vector(init)
    rho = evolve_double(cfg, beta_mode, times, v, generator=G)[:, 0]
    return -np.log(np.abs(rho / v[0])) / times


def _half_time(G: np.ndarray, v: np.ndarray, rtol: float) -> float:
    target = 0.5 * abs(v[0])

    def f(t):
        return abs((matrix_exponential(-G, t) @ v)[0]) - target

    rate = G[0, 0]
    if not rate > 0:
        raise NoRootError("the generator does not damp rho^00_00; no half-life")
    hi = math.log(2.0) / rate
    for _ in range(60):
        if f(hi) < 0:
            break
        hi *= 2.0
    else:
        raise NoRootError("rho^00_00 does not fall to half its initial value")
    return bisect(f, 0.0, hi, rtol=rtol)


def t_half(cfg: TrapConfiguration, beta_mode: str, d_sweep: Sequence[float] | None = None, init=None,
           rtol: float = ROOT_RTOL):
    """Time for ``|rho^00_00|`` to fall to half its initial value, for each separation in ``d_sweep``.

    Without ``d_sweep`` the configuration's own separation is used and a float is returned.
    """
    v = _initial_vector(init)
    if d_sweep is None:
        _require_harmonic(cfg)
        return _half_time(double_wire_generator(cfg, beta_mode).matrix, v, rtol)
    out = []
    for d in d_sweep:
        c = cfg.with_separation(float(d))
        _require_harmonic(c)
        out.append(_half_time(double_wire_generator(c, beta_mode).matrix, v, rtol))
    return np.array(out)


def gamma_large_d(cfg: TrapConfiguration) -> float:
    """Closed-form decay rate of ``rho^00_00`` keeping only each trap's own wire (1/s)."""
    return gamma_large_d_rate(cfg)


def double_wire_report(cfg: TrapConfiguration, beta_mode: str, times) -> DecayReport:
    G = double_wire_generator(cfg, beta_mode)
    return DecayReport(
        t_half=_half_time(G.matrix, _initial_vector(None), ROOT_RTOL),
        times=np.asarray(times, float),
        gamma_t=gamma_t(cfg, beta_mode, times, generator=G),
    )
