"""Command-line front end.

Subcommands: simulate, compare, field-profile, charge, freq-sweep.  Each
reads a JSON config (see README for the schema) and writes CSV or JSON to
--out, or stdout when --out is omitted.  Exit codes: 0 success, 1 for
validation or parse errors, 2 for runtime/IO errors.
"""

from __future__ import annotations

import argparse
import datetime
import json
import math
import sys
from typing import Optional

from .closed_form import boundary_speed, charge_to_switch
from .config import (
    ConfigError,
    RunConfig,
    config_dict,
    model_name,
    parse_config,
    _LENGTH_UNITS,
    _quantity,
)
from .fields import (
    ApproxMidpoint,
    ApproxOff,
    ApproxOn,
    FieldModel,
    Sigmoid,
    Uniform,
    field_profile,
)
from .output import profile_text, table_text, trace_text, write_text
from .simulate import frequency_sweep, simulate


def _load_config(path: str) -> RunConfig:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    return parse_config(text)


def _model_from_name(name: str, config: RunConfig) -> FieldModel:
    """Resolve a --models entry, reusing the config model's parameters when
    the kinds match (midpoint weights, sigmoid half-width)."""
    if name == "uniform":
        return Uniform()
    if name == "approx-on":
        return ApproxOn()
    if name == "approx-off":
        return ApproxOff()
    if name == "approx-midpoint":
        if isinstance(config.model, ApproxMidpoint):
            return config.model
        return ApproxMidpoint()
    if name == "sigmoid":
        if isinstance(config.model, Sigmoid):
            return config.model
        return Sigmoid(half_width_t=config.device.thickness_d / 20.0)
    raise ConfigError(
        f"unknown model name {name!r}; expected uniform, approx-on, approx-off, "
        "approx-midpoint or sigmoid"
    )


def _split_csv_list(text: str, flag: str) -> list[str]:
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise ConfigError(f"{flag}: expected a non-empty comma-separated list")
    return items


def _write_sidecar(out: Optional[str], config: RunConfig, enabled: bool) -> None:
    if not enabled:
        return
    if out is None:
        raise ConfigError("--sidecar requires --out (or output_path in the config)")
    doc = {
        "written_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "config": config_dict(config),
    }
    with open(out + ".meta.json", "w", newline="") as fh:
        fh.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _resolve_out(args, config: RunConfig) -> Optional[str]:
    if args.out is not None:
        return args.out
    return config.output_path


def _resolve_format(args, config: RunConfig) -> str:
    if args.format is not None:
        return args.format
    return config.output_format


def _cmd_simulate(args) -> None:
    config = _load_config(args.config)
    trace = simulate(
        config.device, config.model, config.window, config.drive,
        duration=config.duration, dt=config.dt,
        integrator=config.integrator, w0=config.w0,
    )
    out = _resolve_out(args, config)
    write_text(trace_text(trace, fmt=_resolve_format(args, config)), out)
    _write_sidecar(out, config, args.sidecar)


def _cmd_compare(args) -> None:
    config = _load_config(args.config)
    names = _split_csv_list(args.models, "--models")
    if len(names) < 2:
        raise ConfigError("--models: need at least 2 models to compare")
    models = [_model_from_name(n, config) for n in names]
    params = config.device

    # Reference current: the drive amplitude when the drive is a current
    # source, else 1 A (ratios are current-independent either way).
    ref_current = config.drive.amplitude if config.drive.is_current else 1.0
    if ref_current == 0.0:
        ref_current = 1.0

    d = params.thickness_d
    speed_on = boundary_speed(params, ApproxOn(), ref_current, 0.0)
    charge_on = charge_to_switch(params, ApproxOn())

    header = [
        "model",
        "speed_min_m_per_s", "speed_max_m_per_s",
        "speed_ratio_min", "speed_ratio_max",
        "charge_to_switch_C", "charge_ratio",
        "final_r_ohm",
    ]
    rows = []
    for name, model in zip(names, models):
        if isinstance(model, Uniform):
            # R(w) spans [r_on, r_off], so the uniform-field speed is a range.
            s_min = params.mobility_v * params.r_on * ref_current / d
            s_max = params.mobility_v * params.r_off * ref_current / d
        else:
            s_min = s_max = boundary_speed(params, model, ref_current, 0.0)
        if isinstance(model, Sigmoid):
            charge = math.nan  # no closed form; see charge_to_switch
        else:
            charge = charge_to_switch(params, model)
        trace = simulate(
            params, model, config.window, config.drive,
            duration=config.duration, dt=config.dt,
            integrator=config.integrator, w0=config.w0,
        )
        rows.append([
            name,
            s_min, s_max,
            s_min / speed_on, s_max / speed_on,
            charge, charge / charge_on,
            float(trace.r[-1]),
        ])
    meta = {"reference_current_A": ref_current, "normalized_to": "approx-on"}
    out = _resolve_out(args, config)
    write_text(table_text(header, rows, meta=meta, fmt=_resolve_format(args, config)), out)


def _cmd_field_profile(args) -> None:
    config = _load_config(args.config)
    w = _quantity(_maybe_number(args.w), _LENGTH_UNITS, "--w")
    current = config.drive.amplitude if config.drive.is_current else 1.0
    fmt = _resolve_format(args, config)
    out = _resolve_out(args, config)

    if args.half_widths is not None:
        if not isinstance(config.model, Sigmoid):
            raise ConfigError("--half-widths only applies when model.kind is 'sigmoid'")
        if out is None:
            raise ConfigError("--half-widths writes one file per value; --out is required")
        widths = [
            _quantity(_maybe_number(item), _LENGTH_UNITS, "--half-widths")
            for item in _split_csv_list(args.half_widths, "--half-widths")
        ]
        stem, dot, ext = out.rpartition(".")
        for t in widths:
            profile = field_profile(config.device, Sigmoid(half_width_t=t), w, current, args.samples)
            suffix = f"_t{t:g}"
            path = f"{stem}{suffix}{dot}{ext}" if dot else f"{out}{suffix}"
            write_text(profile_text(profile, fmt=fmt, meta={"w_m": w}), path)
        return

    profile = field_profile(config.device, config.model, w, current, args.samples)
    write_text(profile_text(profile, fmt=fmt, meta={"w_m": w}), out)


def _maybe_number(text: str):
    try:
        return float(text)
    except ValueError:
        return text


def _cmd_charge(args) -> None:
    config = _load_config(args.config)
    names = (
        _split_csv_list(args.models, "--models")
        if args.models is not None
        else ["approx-on", "approx-off", "approx-midpoint", "uniform"]
    )
    rows = []
    for name in names:
        model = _model_from_name(name, config)
        charge = math.nan if isinstance(model, Sigmoid) else charge_to_switch(config.device, model)
        rows.append([name, charge])
    out = _resolve_out(args, config)
    write_text(
        table_text(["model", "charge_to_switch_C"], rows, fmt=_resolve_format(args, config)),
        out,
    )


def _cmd_freq_sweep(args) -> None:
    config = _load_config(args.config)
    freqs = []
    for item in _split_csv_list(args.freqs, "--freqs"):
        try:
            freqs.append(float(item))
        except ValueError:
            raise ConfigError(f"--freqs: cannot parse frequency {item!r}") from None
    results = frequency_sweep(
        config.device, config.model, config.window, config.drive, freqs,
        periods=args.periods, steps_per_period=args.steps_per_period,
        integrator=config.integrator, w0=config.w0,
    )
    out = _resolve_out(args, config)
    write_text(
        table_text(["freq_Hz", "area_VA"], [[f, a] for f, a in results],
                   fmt=_resolve_format(args, config)),
        out,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="memdrift",
        description="Boundary-drift memristor models: simulation and analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="path to a JSON run config")
        p.add_argument("--out", default=None, help="output path (default: stdout or config output_path)")
        p.add_argument("--format", choices=("csv", "json"), default=None,
                       help="output format (default: config output_format)")

    p = sub.add_parser("simulate", help="integrate one transient run and write the trace")
    common(p)
    p.add_argument("--sidecar", action="store_true",
                   help="also write <out>.meta.json with a timestamp and the config echo")
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("compare", help="per-model speed, switching charge and final resistance")
    common(p)
    p.add_argument("--models", required=True,
                   help="comma-separated model names (need at least 2)")
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("field-profile", help="field along the device at a fixed boundary position")
    common(p)
    p.add_argument("--w", required=True, help="boundary position, e.g. 5e-9 or '5 nm'")
    p.add_argument("--samples", type=int, default=512, help="grid points (default 512)")
    p.add_argument("--half-widths", default=None,
                   help="sigmoid only: comma-separated half-widths; writes one file per value")
    p.set_defaults(handler=_cmd_field_profile)

    p = sub.add_parser("charge", help="closed-form charge-to-switch per model")
    common(p)
    p.add_argument("--models", default=None, help="comma-separated model names")
    p.set_defaults(handler=_cmd_charge)

    p = sub.add_parser("freq-sweep", help="hysteresis loop area across drive frequencies")
    common(p)
    p.add_argument("--freqs", required=True, help="comma-separated frequencies in Hz")
    p.add_argument("--periods", type=int, default=3,
                   help="drive periods per run; the last one is measured (default 3)")
    p.add_argument("--steps-per-period", type=int, default=2000,
                   help="integration steps per drive period (default 2000)")
    p.set_defaults(handler=_cmd_freq_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        return 0 if code == 0 else 1
    try:
        args.handler(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
