"""Shared numerical kernels.

Adaptive quadrature for algebraically decaying integrands on the real line,
monotone interpolation tables with a power-law tail, direct discrete Fourier
synthesis, bisection and a small dense matrix exponential.  Everything here is
deterministic: no randomised algorithms and a fixed reduction order.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate
from scipy.interpolate import PchipInterpolator

from .errors import NoRootError, QuadratureError, ResolutionError

QUAD_RTOL = 1e-10
EXPM_TOL = 1e-12
ROOT_RTOL = 1e-6
SPECTRAL_TAIL = 1e-6
QUAD_LIMIT = 400
_MIN_RTOL = 50.0 * np.finfo(float).eps  # QUADPACK floor


def _check_tol(tol: float):
    if not tol >= _MIN_RTOL:
        raise QuadratureError(f"requested relative tolerance {tol:.1e} is below the attainable {_MIN_RTOL:.1e}")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abserr: float
    neval: int


def integrate_infinite(
    f: Callable[[float], float],
    tol: float = QUAD_RTOL,
    scale: float = 1.0,
    points: Sequence[float] = (0.0,),
    scales: Sequence[float] | None = None,
    limit: int = QUAD_LIMIT,
) -> QuadratureResult:
    """Integrate ``f`` over the whole real line.

    The line is cut at the midpoints between the sorted ``points`` (centres of
    structure in the integrand).  Each piece is mapped onto a finite
    ``theta`` interval by ``z = c + s * tan(theta)`` around its own centre
    ``c`` with width ``s`` (``scales``, default ``scale``), so integrands
    decaying like ``|z|**-2`` or faster stay bounded, and well separated peaks
    of very different widths are each resolved.  Adaptive Gauss-Kronrod
    (QUADPACK) is run on every piece.

    Raises
    ------
    QuadratureError
        If the requested relative tolerance is not met within ``limit``
        subintervals.  The best estimate is attached to the exception.
    """
    _check_tol(tol)
    if scales is None:
        scales = [scale] * len(points)
    if len(points) == 0 or len(scales) != len(points):
        raise ValueError("need at least one centre and one scale per centre")
    if min(scales) <= 0:
        raise ValueError("scales must be positive")
    order = sorted(range(len(points)), key=lambda i: points[i])
    centres = [float(points[i]) for i in order]
    widths = [float(scales[i]) for i in order]
    cuts = [-math.inf] + [0.5 * (a + b) for a, b in zip(centres[:-1], centres[1:])] + [math.inf]

    half = 0.5 * math.pi
    total = 0.0
    err = 0.0
    neval = 0
    flagged = False
    for c, w, lo, hi in zip(centres, widths, cuts[:-1], cuts[1:]):

        def g(theta, c=c, w=w):
            cs = math.cos(theta)
            if cs == 0.0:
                return 0.0
            return f(c + w * math.tan(theta)) * w / (cs * cs)

        a = -half if lo == -math.inf else math.atan((lo - c) / w)
        b = half if hi == math.inf else math.atan((hi - c) / w)
        if b <= a:
            continue
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            out = integrate.quad(g, a, b, epsabs=0.0, epsrel=tol, limit=limit, full_output=1)
        total += out[0]
        err += out[1]
        neval += out[2]["neval"]
        flagged = flagged or len(out) > 3
    # QUADPACK also flags round-off limited runs; only a real shortfall is an error
    if flagged and err > 10 * tol * abs(total):
        raise QuadratureError(
            f"quadrature stopped at relative error {err / max(abs(total), 1e-300):.1e} "
            f"(requested {tol:.1e}); estimate {total:.6e}",
            estimate=total,
            abserr=err,
        )
    return QuadratureResult(total, err, neval)


def integrate_finite(f: Callable[[float], float], a: float, b: float, tol: float = QUAD_RTOL,
                     points: Sequence[float] | None = None) -> float:
    """Adaptive Gauss-Kronrod on a finite interval; raises on failure.

    ``points`` marks interior locations of sharp structure.
    """
    _check_tol(tol)
    lo, hi = min(a, b), max(a, b)
    pts = None
    if points:
        pts = [p for p in points if lo < p < hi] or None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(f, a, b, epsabs=0.0, epsrel=tol, limit=QUAD_LIMIT, full_output=1, points=pts)
    value, abserr = out[0], out[1]
    if len(out) > 3 and abserr > 10 * tol * abs(value) + 1e-300:
        raise QuadratureError(out[3], estimate=value, abserr=abserr)
    return value


def simpson(y: np.ndarray, dx: float) -> float:
    """Composite Simpson rule on an odd number of equally spaced samples."""
    y = np.asarray(y, dtype=float)
    if y.size % 2 == 0:
        raise ValueError("Simpson rule needs an odd number of samples")
    return dx / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum())


class InterpTable:
    """Monotone cubic table of a positive, even function of one variable.

    Interpolation is done on ``log(y)`` against ``log(x)`` with a PCHIP rule.
    Beyond the last abscissa the function is continued as ``|x|**tail_exponent``;
    below the first abscissa it is joined quadratically to ``value_at_zero``.
    """

    rule = "pchip-loglog"

    def __init__(self, x, y, value_at_zero: float, tail_exponent: float = -3.0):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if x.ndim != 1 or x.shape != y.shape:
            raise ValueError("abscissae and ordinates must be 1-D and of equal length")
        if np.any(np.diff(x) <= 0) or x[0] <= 0:
            raise ValueError("abscissae must be positive and strictly increasing")
        if np.any(y <= 0):
            raise ValueError("ordinates must be positive")
        self.x = x
        self.y = y
        self.value_at_zero = float(value_at_zero)
        self.tail_exponent = float(tail_exponent)
        self._interp = PchipInterpolator(np.log(x), np.log(y), extrapolate=False)

    def __call__(self, xq):
        xq = np.abs(np.asarray(xq, dtype=float))
        out = np.empty_like(xq)
        lo = xq < self.x[0]
        hi = xq > self.x[-1]
        mid = ~(lo | hi)
        out[mid] = np.exp(self._interp(np.log(xq[mid])))
        frac = (xq[lo] / self.x[0]) ** 2
        out[lo] = self.value_at_zero + (self.y[0] - self.value_at_zero) * frac
        out[hi] = self.y[-1] * (xq[hi] / self.x[-1]) ** self.tail_exponent
        return out if out.ndim else float(out)


def spectral_synthesize(coeffs, k, grid, tail: float | None = SPECTRAL_TAIL) -> np.ndarray:
    """Inverse transform ``f(x) = sum_k dk/(2 pi) F_k e^{i k x}`` by direct summation.

    ``coeffs`` has the wavenumber on its last axis (matching the uniform grid
    ``k``); the result replaces that axis by the sample points ``grid``.  When
    ``tail`` is given, coefficients at both grid edges must be below ``tail``
    times the peak magnitude, otherwise the sum would alias.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    k = np.asarray(k, dtype=float)
    grid = np.asarray(grid, dtype=float)
    if k.ndim != 1 or coeffs.shape[-1] != k.size:
        raise ValueError("last axis of coeffs must match the k grid")
    dk = np.diff(k)
    if k.size > 1 and not np.allclose(dk, dk[0], rtol=1e-9, atol=0.0):
        raise ValueError("k grid must be uniform")
    if tail is not None:
        peak = np.max(np.abs(coeffs))
        edge = max(np.max(np.abs(coeffs[..., 0])), np.max(np.abs(coeffs[..., -1])))
        if peak > 0 and edge > tail * peak:
            raise ResolutionError(
                f"spectral tail {edge / peak:.2e} of peak at the k-grid edge exceeds {tail:.0e}"
            )
    step = dk[0] if k.size > 1 else 1.0
    phase = np.exp(1j * np.outer(k, grid))
    # einsum without optimisation runs a fixed-order C loop (no threaded BLAS)
    return np.einsum("...k,kx->...x", coeffs, phase) * (step / (2.0 * math.pi))


def bisect(f: Callable[[float], float], lo: float, hi: float, rtol: float = ROOT_RTOL, maxiter: int = 200) -> float:
    """Root of ``f`` in ``[lo, hi]`` by bisection, to ``rtol`` relative in the abscissa."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise NoRootError(f"no sign change on [{lo:g}, {hi:g}]")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= rtol * abs(mid):
            break
    return 0.5 * (lo + hi)


# Pade(13,13) coefficients for exp(x).
_PADE13 = (
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0, 129060195264000.0, 10559470521600.0,
    670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
    960960.0, 16380.0, 182.0, 1.0,
)
_THETA13 = 5.371920351148152


def matrix_exponential(M, t: float = 1.0) -> np.ndarray:
    """``exp(M t)`` for a small dense matrix, by scaling and squaring.

    A degree-13 Pade approximant is applied to ``M t / 2**s`` with ``s``
    chosen so that the scaled 1-norm is below 5.37, then squared ``s`` times.
    """
    A = np.asarray(M, dtype=float if np.isrealobj(M) else complex) * t
    n = A.shape[0]
    if A.ndim != 2 or A.shape[1] != n:
        raise ValueError("matrix_exponential expects a square matrix")
    if n > 8:
        raise ValueError("matrix_exponential is meant for n <= 8")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    norm = np.linalg.norm(A, 1)
    s = 0 if norm <= _THETA13 else int(math.ceil(math.log2(norm / _THETA13)))
    A = A / 2.0**s
    b = _PADE13
    ident = np.eye(n, dtype=A.dtype)
    A2 = A @ A
    A4 = A2 @ A2
    A6 = A4 @ A2
    U = A @ (A6 @ (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * ident)
    V = A6 @ (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * ident
    R = np.linalg.solve(V - U, V + U)
    for _ in range(s):
        R = R @ R
    return R


def loglog_slope(x, y) -> float:
    """Least-squares slope of ``log|y|`` against ``log x``."""
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.abs(np.asarray(y, dtype=float)))
    return float(np.polyfit(lx, ly, 1)[0])
