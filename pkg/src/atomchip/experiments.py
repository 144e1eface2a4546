"""Named experiments: each turns a validated configuration into CSV tables.

Every runner has the signature ``runner(cfg, params, ctx) -> ExperimentResult``.
Sweeps go through ``ctx.map``, which preserves the sweep order whatever the
number of worker processes, so the emitted tables do not depend on it.
Lengths are written in micrometres and fields in gauss; every column header
carries its unit.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import partial

import numpy as np

from .config import ExperimentConfig
from .dynamics import (
    N_K,
    GaussianPacket,
    evolve_single,
    gamma_large_d,
    gamma_t,
    t_half,
    traced_decay,
)
from .errors import ConfigError, RegimeError
from .generator import DOUBLE_LAYOUT, SINGLE_LAYOUT, double_wire_generator, single_wire_generator
from .noisekernel import (
    CorrelationKernel,
    j_kernel_double,
    rate_at_zero_closed_form,
    table1_asymptotics,
)
from .numerics import QUAD_RTOL, ROOT_RTOL, loglog_slope
from .trapgeom import SQRT8, TrapConfiguration, field_map, grid_local_minima, trap_frequency, trap_minima
from .units import GAUSS, MICRON, parse_quantity


@dataclass(frozen=True)
class RunContext:
    threads: int = 1
    tolerance_scale: float = 1.0

    def map(self, fn, items) -> list:
        items = list(items)
        if self.threads <= 1 or len(items) <= 1:
            return [fn(x) for x in items]
        with ProcessPoolExecutor(max_workers=min(self.threads, len(items))) as pool:
            return list(pool.map(fn, items))

    @property
    def quad_tol(self) -> float:
        return QUAD_RTOL * self.tolerance_scale

    @property
    def root_tol(self) -> float:
        return ROOT_RTOL * self.tolerance_scale


@dataclass
class Table:
    name: str
    columns: tuple
    rows: list
    meta: dict = field(default_factory=dict)


@dataclass
class ExperimentResult:
    tables: list
    results: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)


# --------------------------------------------------------------------------
# parameter helpers


def _grid(spec, dim: str, path: str, scale: float = 1.0) -> np.ndarray:
    """A list of values or a ``{"start", "stop", "num", "spacing"}`` range.

    With ``dim == "dimensionless"`` plain numbers are multiplied by ``scale``.
    """
    if isinstance(spec, list):
        if not spec:
            raise ConfigError("empty list", path)
        return np.array([parse_quantity(v, dim, f"{path}[{i}]") * scale for i, v in enumerate(spec)])
    if not isinstance(spec, dict) or not {"start", "stop", "num"} <= set(spec):
        raise ConfigError("expected a list or an object with start, stop, num", path)
    a = parse_quantity(spec["start"], dim, f"{path}.start") * scale
    b = parse_quantity(spec["stop"], dim, f"{path}.stop") * scale
    n = spec["num"]
    if not isinstance(n, int) or n < 1:
        raise ConfigError("num must be a positive integer", f"{path}.num")
    spacing = spec.get("spacing", "linear")
    if spacing == "log":
        if not (a > 0 and b > 0):
            raise ConfigError("log spacing needs positive endpoints", path)
        return np.geomspace(a, b, n)
    if spacing != "linear":
        raise ConfigError("spacing must be 'linear' or 'log'", f"{path}.spacing")
    return np.linspace(a, b, n)


def _scaled(params: dict, key: str, dim: str, ref: float, ref_name: str, path: str, default=None):
    """Read ``key`` (dimensional) or ``key_<ref_name>`` (multiples of ``ref``)."""
    alt = f"{key}_{ref_name}"
    if key in params and alt in params:
        raise ConfigError(f"give only one of {key!r} and {alt!r}", f"{path}.{key}")
    if key in params:
        return _grid(params[key], dim, f"{path}.{key}")
    if alt in params:
        return _grid(params[alt], "dimensionless", f"{path}.{alt}", ref)
    if default is None:
        raise ConfigError(f"missing {key!r} (or {alt!r})", f"{path}.{key}")
    return np.asarray(default, dtype=float)


def _scalar(params: dict, key: str, dim: str, ref: float, ref_name: str, path: str, default=None) -> float:
    alt = f"{key}_{ref_name}"
    if key in params and alt in params:
        raise ConfigError(f"give only one of {key!r} and {alt!r}", f"{path}.{key}")
    if key in params:
        return parse_quantity(params[key], dim, f"{path}.{key}")
    if alt in params:
        return parse_quantity(params[alt], "dimensionless", f"{path}.{alt}") * ref
    if default is None:
        raise ConfigError(f"missing {key!r} (or {alt!r})", f"{path}.{key}")
    return float(default)


def _check_keys(params: dict, allowed, path: str):
    for k in params:
        if k not in allowed:
            raise ConfigError(f"unknown parameter {k!r}", f"{path}.{k}")


def _kernel_mode(params: dict, path: str) -> str:
    mode = params.get("kernel_mode", "exact")
    if mode not in ("exact", "approx"):
        raise ConfigError("kernel_mode must be 'exact' or 'approx'", f"{path}.kernel_mode")
    return mode


def _need(cfg: ExperimentConfig, kind: str, name: str):
    if cfg.trap.kind != kind:
        raise ConfigError(f"experiment {name!r} needs a {kind} trap", "trap.kind")


def single_wire_like(trap: TrapConfiguration, r0: float) -> TrapConfiguration:
    """Single-wire trap at height ``r0`` sharing bias fields, wire and constants with ``trap``."""
    current = 2.0 * math.pi * r0 * trap.bias_x / trap.constants.mu0
    return replace(trap, kind="single-wire", current=current, wire_separation=None)


# --------------------------------------------------------------------------
# fieldmap


def run_fieldmap(cfg: ExperimentConfig, params: dict, ctx: RunContext) -> ExperimentResult:
    path = "params"
    _check_keys(params, {"x", "y"}, path)
    trap = cfg.trap
    mins = trap_minima(trap)
    r0 = mins.r0
    if trap.kind == "single-wire":
        dx = (-3 * r0, 3 * r0)
    else:
        dx = (-trap.wire_separation, trap.wire_separation)
    x = _grid(params["x"], "length", f"{path}.x") if "x" in params else np.linspace(*dx, 121)
    y = _grid(params["y"], "length", f"{path}.y") if "y" in params else np.linspace(0.2 * r0, 3 * r0, 121)
    fm = field_map(trap, x, y)
    rows = [(xi / MICRON, yi / MICRON, fm.magnitude[iy, ix] / GAUSS) for iy, yi in enumerate(y) for ix, xi in enumerate(x)]
    grid = Table("fieldmap", ("x [um]", "y [um]", "B [G]"), rows)

    cut_rows = []
    for label, cut in fm.cuts.items():
        for axis in ("x", "y"):
            coords, mag, harm = cut[axis]
            cut_rows += [(label, axis, c / MICRON, m / GAUSS, h / GAUSS) for c, m, h in zip(coords, mag, harm)]
    cuts = Table("fieldmap_cuts", ("trap [-]", "axis [-]", "coordinate [um]", "B [G]", "B_harmonic [G]"), cut_rows)

    min_rows = [(label, x0 / MICRON, y0 / MICRON) for label, (x0, y0) in mins.positions.items()]
    minima = Table("fieldmap_minima", ("trap [-]", "x [um]", "y [um]"), min_rows)
    results = {
        "regime": mins.regime,
        "r0 [m]": r0,
        "grid_minima": len(grid_local_minima(fm)),
    }
    notes = []
    try:
        omega, w = trap_frequency(trap)
        results["omega [rad/s]"] = omega
        results["oscillator_length [m]"] = w
    except RegimeError as exc:
        notes.append(str(exc))
    return ExperimentResult([grid, cuts, minima], results, notes)


# --------------------------------------------------------------------------
# single wire rates


def _rate_point(trap: TrapConfiguration, tol: float, r0: float) -> tuple:
    c = single_wire_like(trap, r0)
    k = CorrelationKernel.from_config(c)
    return c.current, rate_at_zero_closed_form(c), k.exact(0.0, tol)


def run_rate_curve(cfg: ExperimentConfig, params: dict, ctx: RunContext) -> ExperimentResult:
    path = "params"
    _check_keys(params, {"r0"}, path)
    _need(cfg, "single-wire", "rate-curve")
    if "r0" not in params:
        raise ConfigError("missing 'r0' sweep", f"{path}.r0")
    r0s = _grid(params["r0"], "length", f"{path}.r0")
    if np.any(r0s <= 0):
        raise ConfigError("r0 values must be positive", f"{path}.r0")
    pts = ctx.map(partial(_rate_point, cfg.trap, ctx.quad_tol), r0s)
    rows = [(r / MICRON, cur, a, aq, a * r**4) for r, (cur, a, aq) in zip(r0s, pts)]
    table = Table(
        "rate_curve",
        ("r0 [um]", "current [A]", "A0 [1/s]", "A0_quadrature [1/s]", "A0_r0^4 [m^4/s]"),
        rows,
    )
    results = {}
    if len(r0s) > 1:
        results["loglog_slope"] = loglog_slope(r0s, [p[1] for p in pts])
    return ExperimentResult([table], results)


def _exact_point(kernel: CorrelationKernel, tol: float, z: float) -> float:
    return kernel.exact(z, tol)


def run_correlation(cfg: ExperimentConfig, params: dict, ctx: RunContext) -> ExperimentResult:
    path = "params"
    _check_keys(params, {"zeta", "zeta_r0", "quadrature"}, path)
    _need(cfg, "single-wire", "correlation")
    r0 = cfg.trap.r0
    zeta = _scaled(params, "zeta", "length", r0, "r0", path)
    exact = CorrelationKernel.from_config(cfg.trap, "exact")
    approx = CorrelationKernel.from_config(cfg.trap, "approx")
    if params.get("quadrature", False):
        a_ex = np.array(ctx.map(partial(_exact_point, exact, ctx.quad_tol), zeta))
    else:
        a_ex = np.asarray(exact(zeta))
    a_ap = np.asarray(approx(zeta))
    a0 = exact.at_zero
    rows = [(z / MICRON, z / r0, e, a, a0 - e, a0 - a) for z, e, a in zip(zeta, a_ex, a_ap)]
    table = Table(
        "correlation",
        ("zeta_minus [um]", "zeta_minus/r0 [1]", "A_exact [1/s]", "A_approx [1/s]",
         "gamma_dec_exact [1/s]", "gamma_dec_approx [1/s]"),
        rows,
    )
    omega, _ = trap_frequency(cfg.trap)
    results = {
        "A0 [1/s]": a0,
        "omega [rad/s]": omega,
        "correlation_length_exact [m]": exact.correlation_length(),
        "correlation_length_approx [m]": approx.correlation_length(),
    }
    return ExperimentResult([table], results)


# --------------------------------------------------------------------------
# wavepacket


def oscillation_rise(y) -> float:
    """Largest rebound of ``y`` above its running minimum, relative to ``y[0]``."""
    y = np.asarray(y, dtype=float)
    if y[0] == 0:
        return 0.0
    return float(np.max(y - np.minimum.accumulate(y)) / y[0])


def _packet_point(packet: GaussianPacket, kernel: CorrelationKernel, zm, zp, n_k: int, t: float):
    f = evolve_single(packet, kernel, t, zm, zp, n_k=n_k)
    return f["rho00"], f["rho11"]


def run_packet(cfg: ExperimentConfig, params: dict, ctx: RunContext) -> ExperimentResult:
    path = "params"
    _check_keys(
        params,
        {"width", "width_r0", "time", "time_A0", "zeta_minus", "zeta_minus_r0", "zeta_plus", "zeta_plus_r0",
         "cut_zeta_plus", "cut_zeta_plus_r0", "cut_time", "cut_time_A0", "kernel_mode", "n_k", "amplitudes",
         "coherence_length", "coherence_length_r0"},
        path,
    )
    _need(cfg, "single-wire", "packet")
    r0 = cfg.trap.r0
    kernel = CorrelationKernel.from_config(cfg.trap, _kernel_mode(params, path))
    a0 = kernel.at_zero
    inv_a0 = 1.0 / a0
    width = _scalar(params, "width", "length", r0, "r0", path, default=20 * r0)
    ell = None
    if "coherence_length" in params or "coherence_length_r0" in params:
        ell = _scalar(params, "coherence_length", "length", r0, "r0", path)
    amps = params.get("amplitudes", [1.0, 0.0])
    if not (isinstance(amps, list) and len(amps) == 2 and all(isinstance(a, (int, float)) for a in amps)):
        raise ConfigError("amplitudes must be two real numbers", f"{path}.amplitudes")
    try:
        packet = GaussianPacket(width, amplitudes=tuple(float(a) for a in amps), coherence_length=ell)
    except ValueError as exc:
        raise ConfigError(str(exc), path) from None
    n_k = params.get("n_k", N_K)
    if not isinstance(n_k, int) or n_k < 3 or n_k % 2 == 0:
        raise ConfigError("n_k must be an odd integer >= 3", f"{path}.n_k")
    t = _scalar(params, "time", "time", inv_a0, "A0", path, default=2 * inv_a0)
    zm = _scaled(params, "zeta_minus", "length", r0, "r0", path)
    zp = _scaled(params, "zeta_plus", "length", r0, "r0", path)
    cut_zp = _scaled(params, "cut_zeta_plus", "length", r0, "r0", path, default=[0.0, 30 * r0])
    cut_t = _scaled(params, "cut_time", "time", inv_a0, "A0", path, default=[0.0, t])
    if np.any(cut_t < 0) or t < 0:
        raise ConfigError("times must be non-negative", f"{path}.time")

    jobs = [(zm, zp, t)] + [(zm, cut_zp, tt) for tt in cut_t]
    out = ctx.map(_PacketJob(packet, kernel, n_k), jobs)

    r00, r11 = out[0]
    rows = [
        (zm[i] / MICRON, zp[j] / MICRON, abs(r00[i, j]), r00[i, j].real, r00[i, j].imag, abs(r11[i, j]))
        for i in range(len(zm)) for j in range(len(zp))
    ]
    cols = ("abs_rho00 [1/m]", "re_rho00 [1/m]", "im_rho00 [1/m]", "abs_rho11 [1/m]")
    grid = Table("packet_map", ("zeta_minus [um]", "zeta_plus [um]") + cols, rows, {"t [s]": t})

    cut_rows = []
    rise = {}
    for tt, (c00, c11) in zip(cut_t, out[1:]):
        for j, p in enumerate(cut_zp):
            cut_rows += [
                (tt, tt * a0, p / MICRON, zm[i] / MICRON, abs(c00[i, j]), c00[i, j].real, c00[i, j].imag, abs(c11[i, j]))
                for i in range(len(zm))
            ]
            fwd = zm >= 0
            if tt > 0 and np.count_nonzero(fwd) > 1:
                rise[f"rise t*A0={tt * a0:.6g} zeta_plus/r0={p / r0:.6g}"] = oscillation_rise(np.abs(c00[fwd, j]))
    cuts = Table("packet_cuts", ("t [s]", "t*A0 [1]", "zeta_plus [um]", "zeta_minus [um]") + cols, cut_rows)
    results = {
        "A0 [1/s]": a0,
        "t [s]": t,
        "width [m]": width,
        "correlation_length [m]": kernel.correlation_length(),
        "oscillation_rise": rise,
    }
    return ExperimentResult([grid, cuts], results)


@dataclass(frozen=True)
class _PacketJob:
    packet: GaussianPacket
    kernel: CorrelationKernel
    n_k: int

    def __call__(self, job):
        zm, zp, t = job
        return _packet_point(self.packet, self.kernel, zm, zp, self.n_k, t)


def run_traced_decay(cfg: ExperimentConfig, params: dict, ctx: RunContext) -> ExperimentResult:
    path = "params"
    _check_keys(params, {"zeta", "zeta_r0", "time", "time_A0", "init", "kernel_mode"}, path)
    _need(cfg, "single-wire", "traced-decay")
    r0 = cfg.trap.r0
    kernel = CorrelationKernel.from_config(cfg.trap, _kernel_mode(params, path))
    a0 = kernel.at_zero
    zeta = _scaled(params, "zeta", "length", r0, "r0", path, default=[0.0])
    times = _scaled(params, "time", "time", 1.0 / a0, "A0", path)
    if np.any(times < 0):
        raise ConfigError("times must be non-negative", f"{path}.time")
    init = params.get("init", [1.0, 0.0])
    if not (isinstance(init, list) and len(init) == 2 and all(isinstance(v, (int, float)) for v in init)):
        raise ConfigError("init must be two real numbers (rho00, rho11)", f"{path}.init")
    rows = []
    for z in zeta:
        for t in times:
            r00 = traced_decay(z, t, (init[0], init[1]), kernel)
            r11 = traced_decay(z, t, (init[1], init[0]), kernel)
            rows.append((t, t * a0, z / MICRON, r00, r11))
    table = Table("traced_decay", ("t [s]", "t*A0 [1]", "zeta_minus [um]", "rho00 [1]", "rho11 [1]"), rows)
    return ExperimentResult([table], {"A0 [1/s]": a0, "population_rate [1/s]": 2.0 * a0})


# --------------------------------------------------------------------------
# double wire


def _thalf_point(trap: TrapConfiguration, rtol: float, d: float) -> tuple:
    c = trap.with_separation(float(d))
    tb = t_half(c, "constant", rtol=rtol)
    tn = t_half(c, "none", rtol=rtol)
    return tb, tn, math.log(2.0) / gamma_large_d(c)


def run_doublewire_thalf(cfg: ExperimentConfig, params: dict, ctx: RunContext) -> ExperimentResult:
    path = "params"
    _check_keys(params, {"d", "d_ybar", "inset_d", "inset_d_ybar", "inset_time", "inset_time_thalf"}, path)
    _need(cfg, "double-wire", "doublewire-thalf")
    trap = cfg.trap
    yb = trap.ybar
    ds = _scaled(params, "d", "length", yb, "ybar", path, default=[trap.wire_separation])
    bad = ds <= SQRT8 * yb
    if np.any(bad):
        raise RegimeError(
            f"sweep point d = {ds[bad][0] / yb:.4g} ybar does not exceed sqrt(8) ybar; "
            "the two-trap harmonic picture needs d > sqrt(8) ybar"
        )
    pts = ctx.map(partial(_thalf_point, trap, ctx.root_tol), ds)
    single = single_wire_like(trap, yb)
    t_single = math.log(2.0) / rate_at_zero_closed_form(single)
    rows = [(d / MICRON, d / yb, tb, tn, tl, t_single) for d, (tb, tn, tl) in zip(ds, pts)]
    table = Table(
        "doublewire_thalf",
        ("d [um]", "d/ybar [1]", "T_half_beta [s]", "T_half_no_beta [s]", "T_half_large_d [s]", "T_half_single [s]"),
        rows,
    )
    tables = [table]

    d_in = _scalar(params, "inset_d", "length", yb, "ybar", path, default=3.0 * yb)
    c_in = trap.with_separation(d_in)
    t_ref = t_half(c_in, "constant", rtol=ctx.root_tol)
    times = _scaled(params, "inset_time", "time", t_ref, "thalf", path, default=np.linspace(0.05, 3.0, 60) * t_ref)
    if np.any(times <= 0):
        raise ConfigError("inset times must be positive", f"{path}.inset_time")
    g_b = gamma_t(c_in, "constant", times)
    g_n = gamma_t(c_in, "none", times)
    tables.append(
        Table(
            "doublewire_gamma_t",
            ("t [s]", "Gamma_beta [1/s]", "Gamma_no_beta [1/s]"),
            [(t, a, b) for t, a, b in zip(times, g_b, g_n)],
            {"d [um]": d_in / MICRON},
        )
    )
    tb = np.array([p[0] for p in pts])
    tn = np.array([p[1] for p in pts])
    results = {
        "T_half_single [s]": t_single,
        "strictly_decreasing": bool(np.all(np.diff(tb) < 0)) if len(tb) > 1 else True,
        "max_relative_beta_effect": float(np.max(np.abs(tb - tn) / tb)),
        "gamma_large_d/single_A0 at last d": float(gamma_large_d(trap.with_separation(ds[-1])) * t_single / math.log(2.0)),
    }
    return ExperimentResult(tables, results)


def _table1_point(trap: TrapConfiguration, tol: float, job) -> tuple:
    d, z = job
    c = trap.with_separation(float(d))
    return tuple(j_kernel_double(c, a, b, "L", z, tol) for a, b in (("L", "L"), ("L", "R"), ("R", "R")))


def run_table1(cfg: ExperimentConfig, params: dict, ctx: RunContext) -> ExperimentResult:
    path = "params"
    _check_keys(params, {"d", "d_ybar", "zeta", "zeta_ybar"}, path)
    _need(cfg, "double-wire", "table1")
    trap = cfg.trap
    yb = trap.ybar
    ds = _scaled(params, "d", "length", yb, "ybar", path, default=np.geomspace(30, 300, 10) * yb)
    zs = _scaled(params, "zeta", "length", yb, "ybar", path, default=np.geomspace(30, 300, 10) * yb)
    if np.any(ds <= SQRT8 * yb):
        raise RegimeError("the table1 asymptotic estimates assume well separated traps (d > sqrt(8) ybar)")
    d_fix = trap.wire_separation
    jobs = [(d, 0.0) for d in ds] + [(d_fix, z) for z in zs]
    vals = ctx.map(partial(_table1_point, trap, ctx.quad_tol), jobs)
    vd, vz = vals[: len(ds)], vals[len(ds):]

    cols = ("J_LL [1/m^5]", "J_LR [1/m^5]", "J_RR [1/m^5]", "estimate_LL [1/m^5]", "estimate_LR [1/m^5]",
            "estimate_RR [1/m^5]")
    d_rows = [(d / MICRON, d / yb) + v + table1_asymptotics("zero", yb, d) for d, v in zip(ds, vd)]
    z_rows = []
    for z, v in zip(zs, vz):
        row = "intermediate" if z < d_fix else "large"
        z_rows.append((z / MICRON, z / yb, row) + v + table1_asymptotics(row, yb, d_fix, z))
    exps = [
        ("d-exponent J_LL", loglog_slope(ds, [v[0] for v in vd]), 0.0),
        ("d-exponent J_LR", loglog_slope(ds, [v[1] for v in vd]), -3.0),
        ("d-exponent J_RR", loglog_slope(ds, [v[2] for v in vd]), -5.0),
        ("zeta-exponent J_LL", loglog_slope(zs, [v[0] for v in vz]), -3.0),
    ]
    tables = [
        Table("table1_d_sweep", ("d [um]", "d/ybar [1]") + cols, d_rows, {"zeta [um]": 0.0}),
        Table("table1_zeta_sweep", ("zeta [um]", "zeta/ybar [1]", "regime [-]") + cols, z_rows, {"d [um]": d_fix / MICRON}),
        Table("table1_exponents", ("quantity [-]", "fitted [1]", "expected [1]"), exps),
    ]
    return ExperimentResult(tables, {name: fit for name, fit, _ in exps})


def run_generator_dump(cfg: ExperimentConfig, params: dict, ctx: RunContext) -> ExperimentResult:
    path = "params"
    trap = cfg.trap
    if trap.kind == "single-wire":
        _check_keys(params, {"zeta", "zeta_r0", "quadrature"}, path)
        ref, name = trap.r0, "r0"
    else:
        _check_keys(params, {"zeta", "zeta_ybar", "beta_mode"}, path)
        ref, name = trap.ybar, "ybar"
    zeta = _scaled(params, "zeta", "length", ref, name, path, default=[0.0])
    rows = []
    for z in zeta:
        if trap.kind == "single-wire":
            gen = single_wire_generator(trap, z, exact=bool(params.get("quadrature", False)))
            layout = SINGLE_LAYOUT
        else:
            mode = params.get("beta_mode", "full")
            if mode not in ("full", "constant", "none"):
                raise ConfigError("beta_mode must be 'full', 'constant' or 'none'", f"{path}.beta_mode")
            if trap.wire_separation <= SQRT8 * trap.ybar:
                raise RegimeError("the double-wire generator needs d > sqrt(8) ybar")
            gen = double_wire_generator(trap, mode, z)
            layout = DOUBLE_LAYOUT
        for i, ri in enumerate(layout.names):
            for j, cj in enumerate(layout.names):
                rows.append((z / MICRON, ri, cj, gen.matrix[i, j], gen.local[i, j], gen.cross[i, j]))
    table = Table("generator", ("zeta [um]", "row [-]", "column [-]", "G [1/s]", "G_local [1/s]", "G_cross [1/s]"), rows)
    return ExperimentResult([table])


RUNNERS = {
    "fieldmap": run_fieldmap,
    "rate-curve": run_rate_curve,
    "correlation": run_correlation,
    "packet": run_packet,
    "traced-decay": run_traced_decay,
    "doublewire-thalf": run_doublewire_thalf,
    "table1": run_table1,
    "generator-dump": run_generator_dump,
}
