"""Deterministic JSON/CSV serialization of diagrams and simulation reports.

Every float is written with 17 significant digits, which round-trips IEEE
doubles exactly. JSON keys appear in a fixed order.
"""
import csv
import json
import math
from dataclasses import asdict, fields as dc_fields
from pathlib import Path

import numpy as np

from .eos import EosParams
from .equilibrium import (
    BoundaryCurve,
    CriticalPoint,
    CurveKind,
    Grid,
    PhaseDiagram,
    SolidModel,
    Tolerances,
    TriplePoint,
)
from .exceptions import ArgumentError

__all__ = [
    "format_number",
    "dumps",
    "diagram_to_dict",
    "diagram_from_dict",
    "load_diagram",
    "curve_csv",
    "read_points_csv",
    "emit_outputs",
    "CURVE_FILES",
]

CURVE_FILES = {
    CurveKind.BOOM_CRISIS: "curve_boom_crisis.csv",
    CurveKind.RECOVERY_RECESSION: "curve_recovery_recession.csv",
    CurveKind.INCREASE_DECREASE: "curve_increase_decrease.csv",
}


def format_number(x):
    x = float(x)
    if not math.isfinite(x):
        raise ArgumentError(f"cannot serialize non-finite number {x!r}")
    return format(x, ".17g")


def _encode(obj, level):
    pad = "  " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_encode(v, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * level + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        items = [_encode(v, level + 1) for v in obj]
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(items) + "]"
        return "[\n" + ",\n".join(pad + i for i in items) + "\n" + "  " * level + "]"
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_number(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    raise ArgumentError(f"cannot serialize {type(obj).__name__}")


def dumps(obj):
    """JSON text with 17-significant-digit floats and a trailing newline."""
    return _encode(obj, 0) + "\n"


def diagram_to_dict(diagram):
    p = diagram.params
    curves = {}
    for curve in diagram.curves:
        body = {"I": curve.I, "P": curve.P}
        if curve.Q_low is not None:
            body.update(Q_low=curve.Q_low, Q_high=curve.Q_high, latent_q=curve.latent_q)
        curves[curve.kind.value] = body
    return {
        "critical": {"I_c": diagram.critical.I_c, "P_c": diagram.critical.P_c, "Q_c": diagram.critical.Q_c},
        "triple": {"I_t": diagram.triple.I_t, "P_t": diagram.triple.P_t},
        "params": {"kind": p.kind.value, "a": p.a, "b": p.b, "R": p.R, "c": p.c},
        "solid": asdict(diagram.solid),
        "grid": asdict(diagram.grid),
        "tolerances": asdict(diagram.tolerances),
        "curves": curves,
    }


def diagram_from_dict(data, validate=True):
    """Rebuild a :class:`PhaseDiagram` from :func:`diagram_to_dict` output."""
    try:
        params = EosParams(**data["params"])
        solid = SolidModel(**data["solid"])
        grid_data = dict(data["grid"])
        for f in dc_fields(Grid):
            if f.name.startswith("n_"):
                grid_data[f.name] = int(grid_data[f.name])
        grid = Grid(**grid_data)
        tol = Tolerances(**{k: float(v) for k, v in data["tolerances"].items()})
        critical = CriticalPoint(**{k: float(v) for k, v in data["critical"].items()})
        triple = TriplePoint(**{k: float(v) for k, v in data["triple"].items()})
        curves = tuple(BoundaryCurve(CurveKind(k), **v) for k, v in data["curves"].items())
    except (KeyError, TypeError) as err:
        raise ArgumentError(f"malformed diagram document: {err}") from err
    diagram = PhaseDiagram(critical, triple, curves, params, solid, grid, tol)
    return diagram.check_invariants() if validate else diagram


def load_diagram(path):
    with open(path, encoding="utf-8") as fp:
        return diagram_from_dict(json.load(fp))


def curve_csv(curve):
    cols = [("I", curve.I), ("P", curve.P)]
    if curve.Q_low is not None:
        cols += [("Q_low", curve.Q_low), ("Q_high", curve.Q_high), ("latent_q", curve.latent_q)]
    lines = [",".join(name for name, _ in cols)]
    for row in zip(*(values for _, values in cols)):
        lines.append(",".join(format_number(v) for v in row))
    return "\n".join(lines) + "\n"


def read_points_csv(path, header):
    """Read numeric rows from a CSV file whose header must equal ``header``."""
    header = tuple(header)
    with open(path, newline="", encoding="utf-8") as fp:
        reader = csv.reader(fp)
        got = tuple(h.strip() for h in next(reader, ()))
        if got != header:
            raise ArgumentError(f"{path}: header must be {','.join(header)}, got {','.join(got)}")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ArgumentError(f"{path}:{lineno}: expected {len(header)} columns")
            try:
                rows.append([float(x) for x in row])
            except ValueError as err:
                raise ArgumentError(f"{path}:{lineno}: {err}") from None
    return np.array(rows, dtype=float).reshape(-1, len(header))


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8", newline="") as fp:
            fp.write(text)
    except OSError as err:
        raise OSError(err.errno, f"cannot write {path}: {err.strerror}") from err


def emit_outputs(diagram, out_dir, report=None, width=800, height=600):
    """Write diagram.json, the three curve CSVs, diagram.svg and optionally simulation.json.

    Returns the written paths in a fixed order.
    """
    from .svg import render_svg

    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as err:
        raise OSError(err.errno, f"cannot create output directory {out}: {err.strerror}") from err
    if not out.is_dir():
        raise OSError(f"output path {out} is not a directory")

    files = [(out / "diagram.json", dumps(diagram_to_dict(diagram)))]
    for kind in (CurveKind.BOOM_CRISIS, CurveKind.RECOVERY_RECESSION, CurveKind.INCREASE_DECREASE):
        files.append((out / CURVE_FILES[kind], curve_csv(diagram.curve(kind))))
    files.append((out / "diagram.svg", render_svg(diagram, width, height)))
    if report is not None:
        files.append((out / "simulation.json", dumps(report.to_dict())))
    for path, text in files:
        _write(path, text)
    return [path for path, _ in files]
