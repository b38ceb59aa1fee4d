"""Command-line front end: configs, sweeps, deterministic CSV/JSON emission.

Subcommands mirror the library tasks: ``green-plane``, ``green-renorm``,
``bound-states``, ``reflect-sweep``, ``state-dump`` and ``diagnostics``.
Every run is driven by a JSON config document; identical configs produce
byte-identical outputs (floats are printed with 17 significant digits, no
timestamps enter data files, sweep ordering follows the grid).  A small
``<out>.meta.json`` sidecar carries provenance: package version, task and
the config digest.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import __version__
from .diagnostics import run_diagnostics
from .errors import ConfigError, HybridPlaneError
from .junction import (
    CouplingMatrices,
    PhysicalScales,
    SpinIndependentCoupling,
    natural_coupling,
    reduce_units,
    validate_coupling,
)
from .plane_green import (
    SpinOrbitKind,
    SpinOrbitParams,
    renormalized_green_scalar,
    spin_orbit_green,
)
from .scattering import reflection_amplitude, scattering_state
from .specfun import SpectralPoint
from .spectrum import (
    default_search_interval,
    find_bound_states,
    reality_region_report,
)

__all__ = ["RunConfig", "parse_config", "run", "main"]

TASKS = (
    "green-plane",
    "green-renorm",
    "bound-states",
    "reflect-sweep",
    "state-dump",
    "diagnostics",
)


def _fmt(x: float) -> str:
    return "%.17g" % float(x)


def _die(code: str, message: str):
    raise ConfigError(code, message)


def _as_complex(value, code, what):
    if isinstance(value, (int, float)):
        return complex(value)
    if (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(isinstance(v, (int, float)) for v in value)
    ):
        return complex(value[0], value[1])
    _die(code, "%s must be a number or [re, im] pair, got %r" % (what, value))


def _as_matrix(value, code, what):
    try:
        rows = [[_as_complex(v, code, what) for v in row] for row in value]
        arr = np.array(rows, dtype=complex)
    except (TypeError, ConfigError):
        _die(code, "%s must be a 2x2 matrix of numbers or [re, im] pairs" % what)
    if arr.shape != (2, 2):
        _die(code, "%s must be 2x2, got shape %s" % (what, arr.shape))
    return arr


def _grid(value, name):
    if isinstance(value, dict):
        for key in ("start", "stop", "num"):
            if key not in value:
                _die("schema", "grid %s is missing %r" % (name, key))
        num = value["num"]
        if not isinstance(num, int) or num < 1:
            _die("empty-grid", "grid %s needs a positive integer num" % name)
        spacing = value.get("spacing", "linear")
        if spacing == "linear":
            pts = np.linspace(value["start"], value["stop"], num)
        elif spacing == "log":
            if value["start"] <= 0 or value["stop"] <= 0:
                _die("bad-grid", "log grid %s needs positive endpoints" % name)
            pts = np.geomspace(value["start"], value["stop"], num)
        else:
            _die("schema", "grid %s has unknown spacing %r" % (name, spacing))
    elif isinstance(value, (list, tuple)):
        pts = np.asarray(value, dtype=float)
    else:
        _die("schema", "grid %s must be a list or {start, stop, num}" % name)
    if pts.size == 0:
        _die("empty-grid", "grid %s is empty" % name)
    if pts.size > 1 and not (np.all(np.diff(pts) > 0) or np.all(np.diff(pts) < 0)):
        _die("bad-grid", "grid %s must be strictly monotone" % name)
    return pts


@dataclass
class RunConfig:
    """Validated run description consumed by :func:`run`."""

    task: str
    spin_orbit: SpinOrbitParams
    coupling: CouplingMatrices
    coupling_scalar: Optional[SpinIndependentCoupling] = None
    k_grid: Optional[np.ndarray] = None
    energy_grid: Optional[list] = None
    plane_grid: Optional[np.ndarray] = None
    lead_grid: Optional[np.ndarray] = None
    z: Optional[SpectralPoint] = None
    incident_k: Optional[float] = None
    incident_spin: Optional[np.ndarray] = None
    search: Optional[tuple] = None
    out: Optional[str] = None
    format: str = "csv"
    seed: int = 0
    raw: dict = field(default_factory=dict, repr=False)


def _parse_spin_orbit(doc) -> SpinOrbitParams:
    if not isinstance(doc, dict) or "kind" not in doc:
        _die("bad-spin-orbit", "spin_orbit must be an object with a 'kind'")
    kind_raw = str(doc["kind"]).lower()
    try:
        kind = SpinOrbitKind(kind_raw)
    except ValueError:
        _die("bad-spin-orbit", "unknown spin-orbit kind %r" % doc["kind"])
    if "kappa" in doc:
        kappa = doc["kappa"]
        if not isinstance(kappa, (int, float)) or not math.isfinite(kappa):
            _die("bad-spin-orbit", "kappa must be a finite number")
        return SpinOrbitParams(kind, float(kappa))
    if "scales" in doc:
        s = doc["scales"]
        try:
            scales = PhysicalScales(
                alpha=float(s["alpha"]), m_star=float(s["m_star"]), hbar=float(s["hbar"])
            )
        except (KeyError, TypeError, ValueError, HybridPlaneError):
            _die("bad-spin-orbit", "scales must provide alpha, m_star, hbar > 0")
        return SpinOrbitParams(kind, reduce_units(scales))
    _die("bad-spin-orbit", "spin_orbit needs either 'kappa' or 'scales'")


def _parse_coupling(doc):
    if not isinstance(doc, dict):
        _die("bad-coupling", "coupling must be an object")
    if "rho" in doc:
        rho = doc["rho"]
        if not isinstance(rho, (int, float)) or not rho > 0:
            _die("invalid-rho", "natural coupling needs rho > 0, got %r" % (rho,))
        return natural_coupling(float(rho)), None
    if {"a", "c", "d"} <= set(doc):
        scalar = SpinIndependentCoupling(
            a=float(doc["a"]),
            c=_as_complex(doc["c"], "bad-coupling", "coupling.c"),
            d=float(doc["d"]),
        )
        return scalar.matrices(), scalar
    if {"A", "C", "D"} <= set(doc):
        a = _as_matrix(doc["A"], "bad-coupling", "coupling.A")
        c = _as_matrix(doc["C"], "bad-coupling", "coupling.C")
        d = _as_matrix(doc["D"], "bad-coupling", "coupling.D")
        try:
            return validate_coupling(a, c, d), None
        except HybridPlaneError as exc:
            _die("non-hermitian", str(exc))
    _die("bad-coupling", "coupling needs (a, c, d), (A, C, D) or rho")


def _parse_energy(doc, code="schema"):
    if isinstance(doc, dict):
        z = complex(doc.get("re", 0.0), doc.get("im", 0.0))
        return SpectralPoint(z, bool(doc.get("from_above", False)))
    if isinstance(doc, (int, float)):
        return SpectralPoint(complex(doc))
    if isinstance(doc, (list, tuple)) and len(doc) == 2:
        return SpectralPoint(complex(doc[0], doc[1]))
    _die(code, "energy must be a number, [re, im] or {re, im, from_above}")


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON config document into a RunConfig."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        _die("schema", "config is not valid JSON: %s" % exc)
    if not isinstance(doc, dict):
        _die("schema", "config must be a JSON object")

    task = doc.get("task")
    if task not in TASKS:
        _die("bad-task", "task must be one of %s, got %r" % (", ".join(TASKS), task))

    spin_orbit = _parse_spin_orbit(doc.get("spin_orbit", {"kind": "rashba", "kappa": 0.0}))
    coupling, scalar = _parse_coupling(doc.get("coupling", {"a": 0.0, "c": 1.0, "d": 0.0}))

    cfg = RunConfig(task=task, spin_orbit=spin_orbit, coupling=coupling,
                    coupling_scalar=scalar, raw=doc)

    out_doc = doc.get("output", {})
    if not isinstance(out_doc, dict):
        _die("schema", "output must be an object")
    cfg.out = out_doc.get("path")
    cfg.format = out_doc.get("format", "csv")
    if cfg.format not in ("csv", "json"):
        _die("schema", "output format must be csv or json, got %r" % cfg.format)
    seed = doc.get("seed", 0)
    if not isinstance(seed, int):
        _die("schema", "seed must be an integer")
    cfg.seed = seed

    needs_scalar = task in ("bound-states", "reflect-sweep", "state-dump")
    if needs_scalar and scalar is None:
        _die(
            "bad-coupling",
            "task %s needs a spin-independent coupling (a, c, d) or rho; "
            "general matrices are only accepted by the green tasks" % task,
        )
    if task == "reflect-sweep":
        if "k_grid" not in doc:
            _die("schema", "reflect-sweep needs a k_grid")
        cfg.k_grid = _grid(doc["k_grid"], "k_grid")
        if np.any(cfg.k_grid <= 0):
            _die("bad-grid", "k_grid must be strictly positive")
    elif task == "green-renorm":
        if "energy_grid" not in doc:
            _die("schema", "green-renorm needs an energy_grid")
        cfg.energy_grid = [_parse_energy(e) for e in doc["energy_grid"]]
        if not cfg.energy_grid:
            _die("empty-grid", "energy_grid is empty")
    elif task == "green-plane":
        if "z" not in doc or "plane_grid" not in doc:
            _die("schema", "green-plane needs z and plane_grid")
        cfg.z = _parse_energy(doc["z"])
        pts = np.asarray(doc["plane_grid"], dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] == 0:
            _die("empty-grid", "plane_grid must be a nonempty list of [x1, x2]")
        cfg.plane_grid = pts
    elif task == "bound-states":
        if "search" in doc:
            s = doc["search"]
            try:
                cfg.search = (float(s["lo"]), float(s["hi"]))
            except (KeyError, TypeError, ValueError):
                _die("schema", "search must provide numeric lo and hi")
    elif task == "state-dump":
        inc = doc.get("incident")
        if not isinstance(inc, dict) or "k" not in inc:
            _die("schema", "state-dump needs incident: {k, spin?}")
        cfg.incident_k = float(inc["k"])
        if cfg.incident_k <= 0:
            _die("bad-grid", "incident momentum k must be positive")
        spin = inc.get("spin", [1.0, 0.0])
        cfg.incident_spin = np.array(
            [_as_complex(s, "schema", "incident.spin") for s in spin], dtype=complex
        )
        if cfg.incident_spin.shape != (2,):
            _die("schema", "incident spin must have two components")
        cfg.lead_grid = _grid(doc.get("lead_grid", {"start": 0.5, "stop": 40.0, "num": 80}), "lead_grid")
        pts = np.asarray(doc.get("plane_grid", [[1.0, 0.0], [0.0, 1.0], [2.0, 1.0]]), dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] == 0:
            _die("empty-grid", "plane_grid must be a nonempty list of [x1, x2]")
        cfg.plane_grid = pts
    return cfg


# ---------------------------------------------------------------------------
# deterministic writers

def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _json_default(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError("cannot serialize %r" % type(obj))


def _dump_json_text(obj) -> str:
    """Sorted-key JSON with floats at 17 significant digits."""

    def render(node, indent):
        pad = "  " * indent
        if isinstance(node, dict):
            if not node:
                return "{}"
            items = []
            for key in sorted(node):
                items.append(
                    '%s  "%s": %s' % (pad, key, render(node[key], indent + 1))
                )
            return "{\n%s\n%s}" % (",\n".join(items), pad)
        if isinstance(node, (list, tuple, np.ndarray)):
            seq = list(node)
            if not seq:
                return "[]"
            items = ["%s  %s" % (pad, render(v, indent + 1)) for v in seq]
            return "[\n%s\n%s]" % (",\n".join(items), pad)
        if isinstance(node, bool):
            return "true" if node else "false"
        if isinstance(node, (int, np.integer)):
            return str(int(node))
        if isinstance(node, (float, np.floating)):
            val = float(node)
            if math.isnan(val) or math.isinf(val):
                return '"%r"' % val
            return _fmt(val)
        if isinstance(node, complex):
            return render([node.real, node.imag], indent)
        if node is None:
            return "null"
        return json.dumps(str(node))

    return render(obj, 0) + "\n"


def _write_json(path, obj):
    with open(path, "w") as fh:
        fh.write(_dump_json_text(obj))


def _write_sidecar(out_path: str, cfg: RunConfig):
    digest = hashlib.sha256(
        json.dumps(cfg.raw, sort_keys=True).encode()
    ).hexdigest()
    _write_json(
        out_path + ".meta.json",
        {"version": __version__, "task": cfg.task, "config_sha256": digest},
    )


# ---------------------------------------------------------------------------
# tasks

def _map_ordered(fn, items, threads):
    if threads <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _task_reflect_sweep(cfg: RunConfig, threads: int):
    def point(k):
        r = reflection_amplitude(float(k), cfg.coupling_scalar, cfg.spin_orbit)
        return (
            _fmt(k),
            _fmt(r.amplitude.real),
            _fmt(r.amplitude.imag),
            _fmt(r.probability),
            _fmt(r.transmission),
        )

    rows = _map_ordered(point, cfg.k_grid, threads)
    return ["k", "re_R", "im_R", "abs_R_sq", "transmission"], rows, None


def _task_green_renorm(cfg: RunConfig, threads: int):
    def point(z):
        g = renormalized_green_scalar(z, cfg.spin_orbit)
        return (_fmt(z.z.real), _fmt(z.z.imag), _fmt(g.real), _fmt(g.imag))

    rows = _map_ordered(point, cfg.energy_grid, threads)
    return ["re_z", "im_z", "re_g", "im_g"], rows, None


def _task_green_plane(cfg: RunConfig, threads: int):
    origin = (0.0, 0.0)

    def point(xy):
        g = spin_orbit_green(tuple(xy), origin, cfg.z, cfg.spin_orbit)
        out = [_fmt(xy[0]), _fmt(xy[1])]
        for i in range(2):
            for j in range(2):
                out.extend([_fmt(g[i, j].real), _fmt(g[i, j].imag)])
        return tuple(out)

    rows = _map_ordered(point, list(cfg.plane_grid), threads)
    header = ["x1", "x2"]
    for i in range(2):
        for j in range(2):
            header.extend(["re_G%d%d" % (i + 1, j + 1), "im_G%d%d" % (i + 1, j + 1)])
    return header, rows, None


def _task_bound_states(cfg: RunConfig):
    search = cfg.search or default_search_interval(cfg.spin_orbit)
    states = find_bound_states(cfg.coupling_scalar, cfg.spin_orbit, search=search)
    rows = [
        (
            _fmt(s.energy),
            _fmt(s.kappa_b),
            _fmt(s.residual),
            _fmt(s.det_ratio),
            str(s.multiplicity),
        )
        for s in states
    ]
    meta = {
        "search": [search[0], search[1]],
        "count": len(states),
        "reality_region": reality_region_report(cfg.spin_orbit),
    }
    return ["energy", "kappa_b", "residual", "det_ratio", "multiplicity"], rows, meta


def _task_state_dump(cfg: RunConfig):
    state = scattering_state(
        cfg.incident_k,
        cfg.incident_spin,
        cfg.lead_grid,
        cfg.plane_grid,
        cfg.coupling_scalar,
        cfg.spin_orbit,
    )
    rows = []
    for x, psi in zip(state.lead_points, state.lead_values):
        rows.append(
            (
                "lead",
                _fmt(x),
                _fmt(0.0),
                _fmt(psi[0].real),
                _fmt(psi[0].imag),
                _fmt(psi[1].real),
                _fmt(psi[1].imag),
            )
        )
    for xy, psi in zip(state.plane_points, state.plane_values):
        rows.append(
            (
                "plane",
                _fmt(xy[0]),
                _fmt(xy[1]),
                _fmt(psi[0].real),
                _fmt(psi[0].imag),
                _fmt(psi[1].real),
                _fmt(psi[1].imag),
            )
        )
    header = ["region", "coord1", "coord2", "re_psi1", "im_psi1", "re_psi2", "im_psi2"]
    return header, rows, None


def _rows_to_json(header, rows):
    return [
        {key: (val if key in ("region",) else float(val)) for key, val in zip(header, row)}
        for row in rows
    ]


def run(cfg: RunConfig, out: Optional[str] = None, fmt: Optional[str] = None,
        threads: int = 1, seed: Optional[int] = None) -> dict:
    """Execute a validated config; returns a summary with output paths."""
    out = out or cfg.out
    fmt = fmt or cfg.format
    if cfg.task == "diagnostics":
        report = run_diagnostics(seed if seed is not None else cfg.seed)
        if out:
            _write_json(out, report)
            _write_sidecar(out, cfg)
        return {"task": cfg.task, "out": out, "report": report,
                "ok": report["all_passed"]}

    if cfg.task == "reflect-sweep":
        header, rows, meta = _task_reflect_sweep(cfg, threads)
    elif cfg.task == "green-renorm":
        header, rows, meta = _task_green_renorm(cfg, threads)
    elif cfg.task == "green-plane":
        header, rows, meta = _task_green_plane(cfg, threads)
    elif cfg.task == "bound-states":
        header, rows, meta = _task_bound_states(cfg)
    elif cfg.task == "state-dump":
        header, rows, meta = _task_state_dump(cfg)
    else:  # pragma: no cover - parse_config already rejects unknown tasks
        raise ConfigError("bad-task", "unknown task %r" % cfg.task)

    if not out:
        _die("schema", "no output path: pass --out or set output.path")
    if fmt == "csv":
        _write_csv(out, header, rows)
    else:
        payload = {"task": cfg.task, "rows": _rows_to_json(header, rows)}
        if meta:
            payload["meta"] = meta
        _write_json(out, payload)
    if fmt == "csv" and meta:
        _write_json(out + ".report.json", meta)
    _write_sidecar(out, cfg)
    return {"task": cfg.task, "out": out, "rows": len(rows), "ok": True}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="hybridplane",
        description="Spin-orbit plane with a halfline lead: kernels, spectra, scattering.",
    )
    sub = parser.add_subparsers(dest="task", required=True)
    for task in TASKS:
        sp = sub.add_parser(task, help="run the %s task" % task)
        sp.add_argument("--config", required=(task != "diagnostics"),
                        help="path to the JSON run config")
        sp.add_argument("--out", help="output file path")
        sp.add_argument("--format", choices=("csv", "json"), help="output format")
        sp.add_argument("--threads", type=int, default=1, help="sweep worker threads")
        sp.add_argument("--seed", type=int, help="seed for random-parameter diagnostics")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.config:
            with open(args.config) as fh:
                cfg = parse_config(fh.read())
            if cfg.task != args.task:
                raise ConfigError(
                    "bad-task",
                    "config task %r does not match subcommand %r" % (cfg.task, args.task),
                )
        else:
            cfg = RunConfig(
                task="diagnostics",
                spin_orbit=SpinOrbitParams(SpinOrbitKind.RASHBA, 0.0),
                coupling=natural_coupling(1.0),
            )
        summary = run(cfg, out=args.out, fmt=args.format,
                      threads=max(1, args.threads), seed=args.seed)
    except ConfigError as exc:
        _emit_error(args, {"code": exc.code, "type": type(exc).__name__, "message": str(exc)})
        return 2
    except HybridPlaneError as exc:
        payload = {"type": type(exc).__name__, "message": str(exc)}
        for attr in ("determinant", "condition_number", "residual"):
            if getattr(exc, attr, None) is not None:
                payload[attr] = getattr(exc, attr)
        _emit_error(args, payload)
        return 1
    except OSError as exc:
        _emit_error(args, {"type": "OSError", "message": str(exc)})
        return 1
    if not summary["ok"]:
        return 1
    return 0


def _emit_error(args, payload):
    text = _dump_json_text({"error": payload})
    out = getattr(args, "out", None)
    if out:
        try:
            with open(out, "w") as fh:
                fh.write(text)
            return
        except OSError:
            pass
    sys.stderr.write(text)


if __name__ == "__main__":
    sys.exit(main())
