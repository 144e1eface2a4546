from __future__ import annotations

import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from atomchip.errors import NoRootError, QuadratureError, ResolutionError
from atomchip.noisekernel import J0, pair_kernel, unit_cumulative, unit_kernel
from atomchip.numerics import (
    InterpTable,
    bisect,
    integrate_finite,
    integrate_infinite,
    loglog_slope,
    matrix_exponential,
    simpson,
    spectral_synthesize,
)


def test_infinite_lorentzian():
    res = integrate_infinite(lambda x: 1.0 / (1.0 + x * x))
    assert abs(res.value - math.pi) < 1e-12
    assert res.neval > 0


def test_infinite_two_peaks_of_different_width():
    # narrow peak far from a wide one; each must be resolved
    f = lambda x: 1e-3 / ((x - 50.0) ** 2 + 1e-6) + 1.0 / (1.0 + x * x)  # noqa: E731
    res = integrate_infinite(f, points=(0.0, 50.0), scales=(1.0, 1e-3))
    assert res.value == pytest.approx(math.pi * 1e-3 / 1e-3 + math.pi, rel=1e-10)


def test_infinite_nonintegrable_raises():
    with pytest.raises(QuadratureError) as info:
        integrate_infinite(lambda x: 1.0 / (1.0 + abs(x)), tol=1e-12, limit=50)
    assert info.value.estimate is not None


def test_infinite_argument_checks():
    with pytest.raises(ValueError):
        integrate_infinite(lambda x: x, points=())
    with pytest.raises(ValueError):
        integrate_infinite(lambda x: x, points=(0.0,), scales=(-1.0,))


def test_finite_with_breakpoints():
    f = lambda x: math.exp(-((x - 0.3) ** 2) / 1e-8)  # noqa: E731
    exact = math.sqrt(math.pi * 1e-8)
    # the peak must be bracketed, not just marked: a lone breakpoint at its
    # centre leaves a wide neighbour whose nodes all miss it
    pts = [0.3 - 1e-3, 0.3, 0.3 + 1e-3]
    assert integrate_finite(f, 0.0, 1.0, 1e-10, points=pts) == pytest.approx(exact, rel=1e-8)
    # points outside the interval are ignored
    assert integrate_finite(lambda x: x, 0.0, 2.0, points=[-1.0, 5.0]) == pytest.approx(2.0, rel=1e-14)


def test_simpson_exact_for_cubics_and_checks_parity():
    x = np.linspace(0.0, 2.0, 11)
    assert simpson(x**3 - x, x[1] - x[0]) == pytest.approx(4.0 - 2.0, rel=1e-14)
    with pytest.raises(ValueError):
        simpson(np.ones(4), 0.1)


def _kernel_simpson(s, n):
    # J(1, 1; s) on the tan-mapped line, Simpson with n intervals
    th = np.linspace(-math.pi / 2, math.pi / 2, n + 1)[1:-1]
    z = np.tan(th)
    u = 1.0 + z * z
    v = 1.0 + (s - z) ** 2
    y = np.concatenate([[0.0], 1.0 / (u**1.5 * v**1.5) / np.cos(th) ** 2, [0.0]])
    return simpson(y, th[1] - th[0] if n > 2 else math.pi / n)


@pytest.mark.parametrize("s", [0.0, 0.7, 3.0])
def test_kernel_quadrature_vs_fine_simpson(s):
    coarse = _kernel_simpson(s, 80)
    fine = _kernel_simpson(s, 400)
    q = pair_kernel(1.0, 1.0, s)
    assert abs(fine - q) / q < 1e-12
    assert abs(coarse - q) / q < 1e-3


def test_interp_table_against_direct_quadrature():
    rng = np.random.default_rng(7)
    s = np.concatenate([10 ** rng.uniform(-3, 3, 40), [0.0, 1e-4, 2e3, 1e4]])
    table = np.asarray(unit_kernel(s))
    direct = np.array([pair_kernel(1.0, 1.0, x) for x in s])
    assert np.max(np.abs(table / direct - 1.0)) < 1e-4
    assert float(unit_kernel(0.0)) == pytest.approx(J0, rel=1e-12)


def test_cumulative_table_limits_and_oddness():
    s = np.array([1e-4, 0.5, 2.0, 50.0, 1e4])
    phi = np.asarray(unit_cumulative(s))
    np.testing.assert_allclose(np.asarray(unit_cumulative(-s)), -phi, rtol=0, atol=0)
    assert phi[-1] == pytest.approx(2.0, rel=1e-7)
    assert phi[0] == pytest.approx(J0 * 1e-4, rel=1e-6)
    assert np.all(np.diff(phi) > 0)


def test_interp_table_validation_and_tail():
    x = np.geomspace(1.0, 10.0, 5)
    t = InterpTable(x, x**-3.0, value_at_zero=2.0)
    assert t(20.0) == pytest.approx(20.0**-3, rel=1e-12)
    assert t(-20.0) == t(20.0)
    assert t(0.0) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        InterpTable(x[::-1], x, 1.0)
    with pytest.raises(ValueError):
        InterpTable(x, -x, 1.0)


def test_spectral_synthesis_of_gaussian():
    sigma = 2.0
    k = np.linspace(-12.0, 12.0, 1201)
    x = np.linspace(-5.0, 5.0, 21)
    F = np.exp(-0.5 * (k * sigma) ** 2)
    f = spectral_synthesize(F, k, x)
    expected = np.exp(-0.5 * x**2 / sigma**2) / math.sqrt(2 * math.pi * sigma**2)
    np.testing.assert_allclose(f.real, expected, atol=1e-14)
    np.testing.assert_allclose(f.imag, 0.0, atol=1e-15)


def test_spectral_synthesis_guards():
    k = np.linspace(-1.0, 1.0, 11)
    with pytest.raises(ResolutionError):
        spectral_synthesize(np.ones(11), k, [0.0])
    with pytest.raises(ValueError):
        spectral_synthesize(np.ones(3), np.array([0.0, 1.0, 3.0]), [0.0], tail=None)
    with pytest.raises(ValueError):
        spectral_synthesize(np.ones(4), k, [0.0])


def test_bisect():
    assert bisect(lambda x: x * x - 2.0, 0.0, 2.0, rtol=1e-14) == pytest.approx(math.sqrt(2.0), rel=1e-13)
    with pytest.raises(NoRootError):
        bisect(lambda x: x * x + 1.0, -1.0, 1.0)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=8), st.integers(min_value=0, max_value=2**31 - 1),
       st.floats(min_value=1e-3, max_value=30.0))
def test_expm_matches_scipy(n, seed, scale):
    rng = np.random.default_rng(seed)
    M = rng.normal(size=(n, n)) * scale / n
    ref = scipy.linalg.expm(M)
    got = matrix_exponential(M)
    assert np.max(np.abs(got - ref)) <= 1e-12 * max(1.0, np.max(np.abs(ref))) * 10


def test_expm_semigroup_and_complex():
    rng = np.random.default_rng(3)
    M = -np.abs(rng.normal(size=(5, 5)))
    np.testing.assert_allclose(matrix_exponential(M, 0.7) @ matrix_exponential(M, 1.3), matrix_exponential(M, 2.0),
                               rtol=1e-12, atol=1e-14)
    C = 1j * np.diag([1.0, 2.0])
    np.testing.assert_allclose(np.diag(matrix_exponential(C, math.pi)), [-1.0, 1.0], atol=1e-13)
    with pytest.raises(ValueError):
        matrix_exponential(np.eye(9))
    with pytest.raises(ValueError):
        matrix_exponential(np.ones((2, 3)))
    with pytest.raises(ValueError):
        matrix_exponential(np.array([[np.nan]]))


def test_loglog_slope():
    x = np.geomspace(1.0, 100.0, 7)
    assert loglog_slope(x, 3.0 * x**-4) == pytest.approx(-4.0, abs=1e-12)
