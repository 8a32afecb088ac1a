"""Deterministic CSV/JSON emission for traces, profiles and tables.

Numbers are written with 17 significant digits (value-preserving for
float64), decimal point, no locale formatting.  No timestamps: identical
inputs produce byte-identical files.  CSV metadata rides in leading
'# key=value' comment lines above the header row.
"""

from __future__ import annotations

import json
import sys
from typing import Iterable, Optional, Sequence

from .config import model_name
from .fields import ApproxMidpoint, Sigmoid
from .simulate import SimulationTrace


def format_number(x: float) -> str:
    return f"{x:.17g}"


def trace_meta(trace: SimulationTrace) -> dict:
    """Run metadata attached to a trace file (deterministic content only)."""
    params = trace.params
    model = trace.model
    meta = {
        "model": model_name(model),
        "r_on_ohm": params.r_on,
        "r_off_ohm": params.r_off,
        "thickness_d_m": params.thickness_d,
        "mobility_v_m2_per_Vs": params.mobility_v,
        "drive": trace.drive.kind,
        "window": trace.window.kind,
        "window_p": trace.window.p,
        "integrator": trace.integrator,
        "dt_s": trace.dt,
        "samples": len(trace),
        "saturated": trace.saturated,
    }
    if isinstance(model, ApproxMidpoint):
        meta["alpha"] = model.alpha
        meta["beta"] = model.beta
    if isinstance(model, Sigmoid):
        meta["half_width_t_m"] = model.half_width_t
    if trace.drive.kind != "piecewise-linear":
        meta["amplitude"] = trace.drive.amplitude
        if trace.drive.kind in ("sine-voltage", "sine-current"):
            meta["frequency_Hz"] = trace.drive.frequency
            meta["phase_rad"] = trace.drive.phase
    return meta


def _meta_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format_number(v)
    return str(v)


def table_text(
    header: Sequence[str],
    rows: Iterable[Sequence],
    meta: Optional[dict] = None,
    fmt: str = "csv",
) -> str:
    """Render a table as CSV (with '#' meta lines) or a JSON document."""
    materialized = [list(row) for row in rows]
    if fmt == "json":
        columns = {
            name: [row[k] for row in materialized] for k, name in enumerate(header)
        }
        doc = {"meta": meta or {}, "columns": columns}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown output format {fmt!r}; expected 'csv' or 'json'")
    lines = []
    for key, value in (meta or {}).items():
        lines.append(f"# {key}={_meta_value(value)}")
    lines.append(",".join(header))
    for row in materialized:
        lines.append(",".join(
            format_number(cell) if isinstance(cell, float) else str(cell)
            for cell in row
        ))
    return "\n".join(lines) + "\n"


def trace_text(trace: SimulationTrace, fmt: str = "csv") -> str:
    header = ["t_s", "v_V", "i_A", "w_m", "r_ohm", "q_C"]
    rows = zip(
        trace.t.tolist(), trace.v.tolist(), trace.i.tolist(),
        trace.w.tolist(), trace.r.tolist(), trace.q.tolist(),
    )
    return table_text(header, rows, meta=trace_meta(trace), fmt=fmt)


def profile_text(profile, fmt: str = "csv", meta: Optional[dict] = None) -> str:
    header = ["x_m", "field_V_per_m"]
    rows = zip(profile.x.tolist(), profile.field.tolist())
    base = {"model": model_name(profile.model), "current_A": profile.current}
    if isinstance(profile.model, Sigmoid):
        base["half_width_t_m"] = profile.model.half_width_t
    if meta:
        base.update(meta)
    return table_text(header, rows, meta=base, fmt=fmt)


def write_text(text: str, path: Optional[str]) -> None:
    """Write to a file (LF line endings) or stdout when path is None."""
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", newline="") as fh:
        fh.write(text)
