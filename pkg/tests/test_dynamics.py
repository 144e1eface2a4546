from __future__ import annotations

import math

import numpy as np
import pytest
from conftest import double, single

from atomchip.dynamics import (
    GaussianPacket,
    evolve_double,
    evolve_single,
    gamma_large_d,
    gamma_pm,
    gamma_t,
    path_integral,
    single_wire_report,
    spectral_components,
    t_half,
    traced_decay,
)
from atomchip.errors import RegimeError, ResolutionError
from atomchip.generator import single_wire_generator
from atomchip.noisekernel import CorrelationKernel
from atomchip.numerics import integrate_finite, matrix_exponential
from atomchip.trapgeom import RB87_MASS


@pytest.fixture(scope="module")
def kern():
    return CorrelationKernel.from_config(single(5e-6))


def test_path_integral_branches(kern):
    r0, t = kern.r0, 2.0
    for span in (0.0, 1.0, 3.99, 4.01, 20.0):
        for zeta in (0.0, 2.5 * r0, -7.0 * r0):
            v = span * r0 / t
            got = path_integral(kern, zeta, v, t)
            pts = [zeta / v + f * r0 / abs(v) for f in (-3.0, 0.0, 3.0)] if v else None
            ref = integrate_finite(lambda tp: float(kern(zeta - v * tp)), 0.0, t, 1e-7, points=pts)
            assert got == pytest.approx(ref, rel=3e-5)


def test_gamma_pm_limits(kern):
    a0 = kern.at_zero
    assert gamma_pm(0.0, 0.0, 1.0, kern, +1) == pytest.approx(0.0, abs=1e-15)
    assert gamma_pm(0.0, 0.0, 1.0, kern, -1) == pytest.approx(2 * a0, rel=1e-14)
    z = 1.3 * kern.r0
    assert gamma_pm(0.0, z, 1.0, kern, "+") == pytest.approx(a0 - float(kern(z)), rel=1e-12)
    with pytest.raises(ValueError):
        gamma_pm(0.0, 0.0, 1.0, kern, 2)
    with pytest.raises(ValueError):
        gamma_pm(0.0, 0.0, 0.0, kern)


def test_gamma_pm_fast_packet_tends_to_a0(kern):
    # after the packet has moved L r0 the time-averaged kernel is phi(L)/L of A(0)/(3 pi/8)
    a0, t = kern.at_zero, 1.0
    for L, expected in ((100.0, 0.017), (200.0, 0.0085)):
        k = L * kern.r0 * RB87_MASS / (kern.hbar * t)
        for s in (+1, -1):
            dev = abs(gamma_pm(k, 0.0, t, kern, s) / a0 - 1.0)
            assert dev == pytest.approx(expected, rel=0.03)


def test_traced_decay_equilibrates(kern):
    a0 = kern.at_zero
    t = np.linspace(0, 40, 9) / a0
    r = traced_decay(0.0, t, (1.0, 0.0), kern)
    assert r[0] == 1.0
    assert abs(r[-1] - 0.5) < 1e-30 + 1e-12
    tf = np.linspace(0.5, 8.0, 6) / a0
    slope = np.polyfit(tf, np.log(traced_decay(0.0, tf, (1.0, 0.0), kern) - 0.5), 1)[0]
    assert -slope == pytest.approx(2 * a0, rel=1e-9)
    # symmetric initial data stays at 1/2 at zero separation
    assert traced_decay(0.0, 3.0, (0.5, 0.5), kern) == pytest.approx(0.5, rel=1e-14)


def test_traced_decay_matches_generator(kern):
    cfg = single(5e-6)
    for zeta in (0.0, 3e-6, 20e-6):
        G = single_wire_generator(cfg, zeta).matrix
        for t in (0.1, 2.0, 10.0):
            v = matrix_exponential(-G, t) @ np.array([0.7, 0.3, 0.0, 0.0])
            assert v[0] == pytest.approx(traced_decay(zeta, t, (0.7, 0.3), kern), rel=1e-10)


def test_packet_t0_and_hermiticity(kern):
    r0 = kern.r0
    p = GaussianPacket(20 * r0, amplitudes=(0.8, 0.6))
    zm = np.linspace(-10, 10, 21) * r0
    zp = np.linspace(-40, 40, 17) * r0
    f0 = evolve_single(p, kern, 0.0, zm, zp)
    np.testing.assert_allclose(f0["rho00"], 0.64 * p.density(zm, zp), atol=1e-12 * 0.64 / (20 * r0))
    f = evolve_single(p, kern, 2.0 / kern.at_zero, zm, zp)
    assert f.hermiticity_residual() <= 1e-10 * np.abs(f["rho00"]).max()
    with pytest.raises(ValueError):
        evolve_single(p, kern, -1.0, zm, zp)


def test_zero_mode_conserved(kern):
    r0, a0 = kern.r0, kern.at_zero
    p = GaussianPacket(20 * r0, amplitudes=(1.0, 0.0))
    k = np.array([0.0])
    vals = [spectral_components(p, kern, k, [0.0], t)["plus"][0, 0] for t in np.linspace(0, 10 / a0, 11)]
    np.testing.assert_allclose(np.abs(np.array(vals) - 1.0), 0.0, atol=1e-12)


def test_one_period_trace_oracle(kern):
    # summing over one period of the k grid isolates k = 0 exactly
    r0, a0 = kern.r0, kern.at_zero
    n_k = 1025
    p = GaussianPacket(20 * r0)
    k = p.k_grid(n_k)
    dk = k[1] - k[0]
    L = 2 * math.pi / dk
    zp = np.arange(n_k) * L / n_k
    zm = np.array([0.0, 0.7, 3.0, 12.0]) * r0
    t = 2.0 / a0
    f = evolve_single(p, kern, t, zm, zp, n_k=n_k)
    traced = f["rho00"].sum(axis=1) * L / n_k
    ref = p.profile(zm, 0.0) * traced_decay(zm, t, (1.0, 0.0), kern)
    np.testing.assert_allclose(traced, ref, rtol=1e-10)


def test_resolution_guard(kern):
    p = GaussianPacket(20 * kern.r0)
    k = p.k_grid(101)
    edge = abs(p.profile(0.0, k[0]))
    assert edge <= 1.01e-12
    with pytest.raises(ResolutionError):
        evolve_single(p, kern, 1.0, [0.0], [0.0], n_k=101, tail=1e-13)
    with pytest.raises(ValueError):
        p.k_grid(100)


def test_single_wire_report(kern):
    rep = single_wire_report(kern, [0.0, kern.r0])
    assert rep.gamma_pop == pytest.approx(2 * kern.at_zero)
    assert rep.gamma_dec[0] == 0.0
    assert rep.t_half == pytest.approx(math.log(2) / (2 * kern.at_zero))


def test_double_wire_dynamics():
    cfg = double(3.0)
    np.testing.assert_allclose(evolve_double(cfg, "constant", 0.0), [1, 0, 0, 0, 0])
    out = evolve_double(cfg, "constant", [0.0, 1.0, 2.0])
    assert out.shape == (3, 5)
    times = np.linspace(0.5, 30, 12) * 5.0
    g_b = gamma_t(cfg, "constant", times)
    g_n = gamma_t(cfg, "none", times)
    assert np.all(np.diff(g_b) < 0)
    np.testing.assert_allclose(g_n, g_n[0], rtol=1e-10)
    sweep = np.linspace(3, 30, 10) * cfg.ybar
    th = t_half(cfg, "constant", sweep)
    assert np.all(np.diff(th) < 0)
    tn = t_half(cfg, "none", sweep)
    assert np.max(np.abs(th - tn) / th) < 0.2
    big = double(30.0)
    assert t_half(big, "none") * gamma_large_d(big) / math.log(2) == pytest.approx(1.0, rel=2e-3)
    with pytest.raises(RegimeError):
        evolve_double(double(2.0), "constant", 1.0)
    with pytest.raises(ValueError):
        gamma_t(cfg, "constant", [0.0])
