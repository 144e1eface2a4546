"""Command line front-end: ``atomchip run <config>`` and ``atomchip validate <config>``.

Exit codes: 0 success, 2 configuration error, 3 physics-regime violation,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from importlib import metadata, resources
from pathlib import Path

import numpy as np

from .config import ExperimentConfig, load_document, parse_config, regime_report, schema_errors
from .errors import ConfigError, NumericError, RegimeError
from .experiments import RUNNERS, RunContext, Table
from .numerics import EXPM_TOL, QUAD_RTOL, ROOT_RTOL, SPECTRAL_TAIL

EXIT_OK, EXIT_CONFIG, EXIT_REGIME, EXIT_NUMERIC = 0, 2, 3, 4
FLOAT_FORMAT = ".12g"
MANIFEST = "manifest.json"


def preset_names() -> list[str]:
    root = resources.files("atomchip") / "presets"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def resolve_config(arg: str) -> tuple[dict, str]:
    """Load a config file, or a bundled preset when ``arg`` names one and no such file exists."""
    p = Path(arg)
    if not p.exists() and arg in preset_names():
        text = (resources.files("atomchip") / "presets" / f"{arg}.json").read_text()
        return json.loads(text), f"preset:{arg}"
    return load_document(p), str(p)


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), FLOAT_FORMAT)
    return str(v)


def render_csv(table: Table, header_meta: dict) -> str:
    buf = io.StringIO()
    for k, v in {**header_meta, **table.meta}.items():
        buf.write(f"# {k}: {_fmt(v)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        if len(row) != len(table.columns):
            raise ValueError(f"table {table.name}: row width {len(row)} != {len(table.columns)} columns")
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    return obj


def execute(cfg: ExperimentConfig, out_dir: Path, ctx: RunContext, source: str = "") -> dict:
    """Run every experiment of ``cfg``, write CSVs and the manifest, return the manifest."""
    t_start = time.perf_counter()
    results, notes, files = {}, [], []
    used = set()
    out_dir.mkdir(parents=True, exist_ok=True)
    multi = len(cfg.runs) > 1
    for i, run in enumerate(cfg.runs):
        res = RUNNERS[run.experiment](cfg, run.params, ctx)
        key = run.experiment if run.experiment not in results else f"{run.experiment}#{i}"
        results[key] = res.results
        notes += [f"{key}: {n}" for n in res.notes]
        for table in res.tables:
            stem = table.name if table.name not in used else f"{table.name}_{i}"
            used.add(stem)
            meta = {"experiment": run.experiment, "config": cfg.name}
            if multi:
                meta["run"] = i
            text = render_csv(table, meta)
            path = out_dir / f"{stem}.csv"
            path.write_text(text)
            files.append({
                "file": path.name,
                "sha256": hashlib.sha256(text.encode()).hexdigest(),
                "rows": len(table.rows),
                "columns": list(table.columns),
            })
    manifest = {
        "tool": "atomchip",
        "version": _version(),
        "config": {
            "source": source,
            "name": cfg.name,
            "document": cfg.raw,
            "resolved": cfg.resolved(),
        },
        "constants": cfg.trap.constants.table(),
        "tolerances": {
            "quadrature_rtol": ctx.quad_tol,
            "root_rtol": ctx.root_tol,
            "expm_tol": EXPM_TOL,
            "spectral_tail": SPECTRAL_TAIL,
            "tolerance_scale": ctx.tolerance_scale,
            "default_quadrature_rtol": QUAD_RTOL,
            "default_root_rtol": ROOT_RTOL,
        },
        "threads": ctx.threads,
        "wall_clock_s": time.perf_counter() - t_start,
        "outputs": files,
        "results": results,
        "notes": notes,
    }
    (out_dir / MANIFEST).write_text(json.dumps(_jsonable(manifest), indent=2, sort_keys=False) + "\n")
    return manifest


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


def _err(msg: str):
    print(f"error: {msg}", file=sys.stderr)


def cmd_run(args) -> int:
    if args.threads < 1:
        _err("--threads must be >= 1")
        return EXIT_CONFIG
    if not args.tolerance_scale > 0:
        _err("--tolerance-scale must be positive")
        return EXIT_CONFIG
    try:
        doc, source = resolve_config(args.config)
        cfg = parse_config(doc, source.removeprefix("preset:"))
        errors, _ = regime_report(cfg)
        if errors:
            raise RegimeError("; ".join(errors))
        out = Path(args.out or cfg.output or Path("out") / cfg.name)
        ctx = RunContext(args.threads, args.tolerance_scale)
        manifest = execute(cfg, out, ctx, source)
    except ConfigError as exc:
        _err(f"configuration: {exc}")
        return EXIT_CONFIG
    except RegimeError as exc:
        _err(f"physics regime: {exc}")
        return EXIT_REGIME
    except (NumericError, ArithmeticError) as exc:
        _err(f"numerical failure: {exc}")
        return EXIT_NUMERIC
    except OSError as exc:
        _err(f"output: {exc}")
        return EXIT_CONFIG
    except ValueError as exc:
        _err(f"configuration: {exc}")
        return EXIT_CONFIG
    for f in manifest["outputs"]:
        print(f"wrote {out / f['file']} ({f['rows']} rows)")
    print(f"wrote {out / MANIFEST} ({manifest['wall_clock_s']:.2f} s)")
    return EXIT_OK


def cmd_validate(args) -> int:
    try:
        doc, source = resolve_config(args.config)
    except ConfigError as exc:
        _err(str(exc))
        return EXIT_CONFIG
    errs = schema_errors(doc)
    if errs:
        for path, msg in errs:
            print(f"schema error at {path}: {msg}")
        return EXIT_CONFIG
    try:
        cfg = parse_config(doc, source.removeprefix("preset:"))
    except ConfigError as exc:
        print(f"schema error at {exc.path or '<root>'}: {exc.message}")
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"invalid value: {exc}")
        return EXIT_CONFIG
    errors, notes = regime_report(cfg)
    for e in errors:
        print(f"regime error: {e}")
    for n in notes:
        print(f"note: {n}")
    if errors:
        return EXIT_REGIME
    print(f"ok: {source} ({', '.join(r.experiment for r in cfg.runs)})")
    return EXIT_OK


def cmd_presets(args) -> int:
    for name in preset_names():
        print(name)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="atomchip", description="Decoherence of cold atoms in wire traps.")
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run the experiments of a config file or bundled preset")
    r.add_argument("config", help="config file path or preset name")
    r.add_argument("--out", help="output directory (default: config 'output' or out/<name>)")
    r.add_argument("--threads", type=int, default=1, help="worker processes for sweeps")
    r.add_argument("--tolerance-scale", type=float, default=1.0, help="multiply quadrature and root tolerances")
    r.set_defaults(func=cmd_run)
    v = sub.add_parser("validate", help="check a config without running it")
    v.add_argument("config")
    v.set_defaults(func=cmd_validate)
    ls = sub.add_parser("presets", help="list bundled presets")
    ls.set_defaults(func=cmd_presets)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
