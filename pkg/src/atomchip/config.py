"""Experiment configuration files: schema validation and conversion to SI objects.

A configuration is a JSON document::

    {
      "experiment": "rate-curve",
      "trap": {"kind": "single-wire", "current": "0.1 A",
               "bias_x": "80 G", "bias_z": "2 G"},
      "noise": {"temperature": "300 K"},
      "params": {...},
      "output": "out/rate"
    }

Several experiments sharing one trap can be listed under ``"runs"``
instead of ``"experiment"``/``"params"``.  Every dimensional scalar is a
string with a unit suffix.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import jsonschema

from .errors import ConfigError, RegimeError
from .noisekernel import NoiseParams
from .trapgeom import SQRT8, PhysicalConstants, TrapConfiguration
from .units import parse_quantity

EXPERIMENTS = (
    "fieldmap",
    "rate-curve",
    "correlation",
    "packet",
    "traced-decay",
    "doublewire-thalf",
    "table1",
    "generator-dump",
)

_QTY = {"type": "string", "pattern": r"^\s*[-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?\s*\S+"}
_NUM = {"type": "number"}
_RANGE = {
    "type": "object",
    "required": ["start", "stop", "num"],
    "properties": {
        "start": {"type": ["string", "number"]},
        "stop": {"type": ["string", "number"]},
        "num": {"type": "integer", "minimum": 1},
        "spacing": {"enum": ["linear", "log"]},
    },
    "additionalProperties": False,
}

TRAP_SCHEMA = {
    "type": "object",
    "required": ["kind", "bias_x", "bias_z"],
    "properties": {
        "kind": {"enum": ["single-wire", "double-wire"]},
        "current": _QTY,
        "r0": _QTY,
        "ybar": _QTY,
        "bias_x": _QTY,
        "bias_z": _QTY,
        "wire_separation": _QTY,
        "conductivity": _QTY,
        "wire_width": _QTY,
        "wire_height": _QTY,
        "g_convention": {"enum": ["bare", "product"]},
        "gF": _NUM,
        "mF": _NUM,
    },
    "additionalProperties": False,
}

NOISE_SCHEMA = {
    "type": "object",
    "properties": {
        "temperature": _QTY,
        "screening_length": _QTY,
        "correlation_time": _QTY,
    },
    "additionalProperties": False,
}

_RUN = {
    "type": "object",
    "required": ["experiment"],
    "properties": {
        "experiment": {"enum": list(EXPERIMENTS)},
        "params": {"type": "object"},
    },
    "additionalProperties": False,
}

SCHEMA = {
    "type": "object",
    "required": ["trap"],
    "properties": {
        "name": {"type": "string"},
        "description": {"type": "string"},
        "experiment": {"enum": list(EXPERIMENTS)},
        "params": {"type": "object"},
        "runs": {"type": "array", "items": _RUN, "minItems": 1},
        "trap": TRAP_SCHEMA,
        "noise": NOISE_SCHEMA,
        "output": {"type": "string"},
    },
    "oneOf": [{"required": ["experiment"]}, {"required": ["runs"]}],
    "additionalProperties": False,
}


@dataclass(frozen=True)
class Run:
    experiment: str
    params: dict


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated configuration: SI trap and noise objects plus the raw run blocks."""

    name: str
    trap: TrapConfiguration
    noise: NoiseParams
    runs: tuple
    output: str | None = None
    raw: dict = field(default_factory=dict, repr=False)

    def resolved(self) -> dict:
        """SI echo of the trap and noise blocks."""
        t = self.trap
        out = {
            "kind": t.kind,
            "current [A]": t.current,
            "bias_x [T]": t.bias_x,
            "bias_z [T]": t.bias_z,
            "conductivity [S/m]": t.conductivity,
            "cross_section [m^2]": t.cross_section,
            "noise_temperature [K]": t.noise_temperature,
            "ybar [m]": t.ybar,
            "screening_length [m]": self.noise.screening_length,
            "wire_width [m]": self.noise.wire_width,
        }
        if t.kind == "double-wire":
            out["wire_separation [m]"] = t.wire_separation
        return out


def _path(parts) -> str:
    return ".".join(str(p) for p in parts) or "<root>"


def schema_errors(doc) -> list[tuple[str, str]]:
    """``(field path, message)`` for every schema violation, sorted by path."""
    errs = []
    validator = jsonschema.Draft202012Validator(SCHEMA)
    for e in validator.iter_errors(doc):
        parts = list(e.absolute_path)
        if e.validator == "required":
            # name the missing field itself
            missing = e.message.split("'")[1] if "'" in e.message else ""
            parts.append(missing)
        elif e.validator == "oneOf" and not parts:
            errs.append(("experiment", "give exactly one of 'experiment' or 'runs'"))
            continue
        errs.append((_path(parts), e.message))
    return sorted(set(errs))


def load_document(path) -> dict:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read configuration: {exc.strerror or exc}", str(path)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", str(path)) from None
    return doc


def _trap_from_block(block: dict) -> tuple[TrapConfiguration, float]:
    q = lambda key, dim: parse_quantity(block[key], dim, f"trap.{key}")  # noqa: E731
    const_kw = {}
    if "g_convention" in block:
        const_kw["g_convention"] = block["g_convention"]
    for key in ("gF", "mF"):
        if key in block:
            if not block[key] > 0:
                raise ConfigError("must be positive", f"trap.{key}")
            const_kw[key] = float(block[key])
    constants = PhysicalConstants(**const_kw)
    kind = block["kind"]
    bx, bz = q("bias_x", "magnetic field"), q("bias_z", "magnetic field")
    for key, val in (("bias_x", bx), ("bias_z", bz)):
        if not val > 0:
            raise ConfigError("bias field must be positive", f"trap.{key}")
    kw = {"constants": constants}
    if "conductivity" in block:
        kw["conductivity"] = q("conductivity", "conductivity")
    width = q("wire_width", "length") if "wire_width" in block else 5e-6
    height = q("wire_height", "length") if "wire_height" in block else 2.5e-6
    if not (width > 0 and height > 0):
        raise ConfigError("wire dimensions must be positive", "trap.wire_width")
    kw["cross_section"] = width * height

    sources = [k for k in ("current", "r0", "ybar") if k in block]
    if len(sources) != 1:
        raise ConfigError("give exactly one of 'current', 'r0', 'ybar'", "trap.current")
    src = sources[0]
    val = q(src, "current" if src == "current" else "length")
    if not val > 0:
        raise ConfigError("must be positive", f"trap.{src}")
    current = val if src == "current" else 2.0 * math.pi * val * bx / constants.mu0

    d = None
    if kind == "double-wire":
        if "wire_separation" not in block:
            raise ConfigError("double-wire trap needs 'wire_separation'", "trap.wire_separation")
        d = q("wire_separation", "length")
        if not d > 0:
            raise ConfigError("must be positive", "trap.wire_separation")
    elif "wire_separation" in block:
        raise ConfigError("only meaningful for a double-wire trap", "trap.wire_separation")
    return TrapConfiguration(kind, current, bx, bz, wire_separation=d, **kw), width


def _noise_from_block(block: dict, trap: TrapConfiguration, wire_width: float) -> tuple[TrapConfiguration, NoiseParams]:
    kw = {}
    temp = trap.noise_temperature
    if "temperature" in block:
        temp = parse_quantity(block["temperature"], "temperature", "noise.temperature")
        if temp < 0:
            raise ConfigError("must be non-negative", "noise.temperature")
    if "screening_length" in block:
        kw["screening_length"] = parse_quantity(block["screening_length"], "length", "noise.screening_length")
        if not kw["screening_length"] > 0:
            raise ConfigError("must be positive", "noise.screening_length")
    if "correlation_time" in block:
        kw["tau_c"] = parse_quantity(block["correlation_time"], "time", "noise.correlation_time")
    trap = replace(trap, noise_temperature=temp)
    noise = NoiseParams.from_config(trap, wire_width=wire_width, **kw)
    return trap, noise


def parse_config(doc, source: str = "<config>") -> ExperimentConfig:
    """Validate a configuration document and convert it to SI objects.

    Raises
    ------
    ConfigError
        On the first schema or unit violation, with its field path.
    """
    errs = schema_errors(doc)
    if errs:
        path, msg = errs[0]
        raise ConfigError(msg, path)
    trap, width = _trap_from_block(doc["trap"])
    trap, noise = _noise_from_block(doc.get("noise", {}), trap, width)
    if "runs" in doc:
        runs = tuple(Run(r["experiment"], r.get("params", {})) for r in doc["runs"])
    else:
        runs = (Run(doc["experiment"], doc.get("params", {})),)
    name = doc.get("name") or Path(source).stem
    return ExperimentConfig(name, trap, noise, runs, doc.get("output"), doc)


def regime_report(cfg: ExperimentConfig) -> tuple[list[str], list[str]]:
    """``(errors, notes)`` about the physical regime, computed without running anything."""
    from .trapgeom import trap_frequency

    errors, notes = [], []
    t = cfg.trap
    if t.kind == "double-wire":
        ratio = t.wire_separation / t.ybar
        if ratio <= 2.0 + 1e-12:
            errors.append(
                f"d = {ratio:.4g} ybar <= 2 ybar: the two minima have merged into a single trap "
                "(merged-minimum condition); the double-wire model does not apply"
            )
        elif ratio <= SQRT8:
            errors.append(
                f"d = {ratio:.4g} ybar <= sqrt(8) ybar: the two minima are too close for "
                "independent harmonic wells"
            )
    if not errors:
        try:
            omega, w = trap_frequency(t)
        except RegimeError as exc:
            errors.append(str(exc))
        else:
            orc = cfg.noise.omega_RC
            notes.append(f"trap frequency omega = {omega:.6g} rad/s (2 pi x {omega / (2 * math.pi):.6g} Hz)")
            notes.append(f"charge relaxation omega_RC = {orc:.6g} rad/s")
            notes.append(f"oscillator length w = {w:.6g} m")
            if not cfg.noise.markov_valid(omega):
                notes.append("warning: omega is not well below omega_RC; Markov treatment questionable")
    return errors, notes
