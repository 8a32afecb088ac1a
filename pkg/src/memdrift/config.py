"""JSON run configuration: parsing, SI normalization, serialization.

Quantities may be plain numbers (already SI) or strings with a unit suffix,
e.g. "10 nm" or "1e-10 cm2/Vs".  Conversion happens here once; everything
downstream of parse_config is SI.  Unknown keys are rejected so that typos
fail loudly instead of silently using a default.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Any, Optional

from .device import DEFAULT_MOBILITY_E, DeviceParams
from .fields import ApproxMidpoint, ApproxOff, ApproxOn, FieldModel, Sigmoid, Uniform
from .simulate import DriveWaveform, WindowSpec


class ConfigError(ValueError):
    """Malformed or invalid run configuration."""


_LENGTH_UNITS = {
    "m": 1.0,
    "cm": 1e-2,
    "mm": 1e-3,
    "um": 1e-6,
    "µm": 1e-6,
    "nm": 1e-9,
}
_MOBILITY_UNITS = {
    "m2/Vs": 1.0,
    "m^2/Vs": 1.0,
    "cm2/Vs": 1e-4,
    "cm^2/Vs": 1e-4,
}

_MODEL_NAMES = ("uniform", "approx-on", "approx-off", "approx-midpoint", "sigmoid")


@dataclass(frozen=True)
class RunConfig:
    """One fully validated simulation setup, SI units throughout."""

    device: DeviceParams
    model: FieldModel
    window: WindowSpec
    drive: DriveWaveform
    duration: float
    dt: float
    integrator: str = "rk4"
    w0: float = 0.0
    output_path: Optional[str] = None
    output_format: str = "csv"


def _number(value: Any, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{field}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{field}: expected a finite number, got {value!r}")
    return float(value)


def _quantity(value: Any, units: dict[str, float], field: str) -> float:
    """A number (SI) or a '<value> <unit>' string normalized to SI."""
    if isinstance(value, str):
        parts = value.split()
        if len(parts) != 2:
            raise ConfigError(
                f"{field}: expected '<value> <unit>', got {value!r}"
            )
        try:
            magnitude = float(parts[0])
        except ValueError:
            raise ConfigError(f"{field}: cannot parse number in {value!r}") from None
        if parts[1] not in units:
            raise ConfigError(
                f"{field}: unknown unit {parts[1]!r}; expected one of {sorted(units)}"
            )
        return magnitude * units[parts[1]]
    return _number(value, field)


def _require_keys(data: Any, allowed: set[str], required: set[str], where: str) -> dict:
    if not isinstance(data, dict):
        raise ConfigError(f"{where}: expected an object, got {type(data).__name__}")
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"{where}: unknown key(s) {sorted(unknown)}")
    missing = required - set(data)
    if missing:
        raise ConfigError(f"{where}: missing required key(s) {sorted(missing)}")
    return data


def _parse_device(data: Any) -> DeviceParams:
    data = _require_keys(
        data,
        allowed={"r_on", "r_off", "thickness_d", "mobility_v", "mobility_e",
                 "assumption3_enforced"},
        required={"r_on", "r_off", "thickness_d", "mobility_v"},
        where="device",
    )
    enforced = data.get("assumption3_enforced", True)
    if not isinstance(enforced, bool):
        raise ConfigError(
            f"device.assumption3_enforced: expected a boolean, got {enforced!r}"
        )
    params = DeviceParams(
        r_on=_number(data["r_on"], "device.r_on"),
        r_off=_number(data["r_off"], "device.r_off"),
        thickness_d=_quantity(data["thickness_d"], _LENGTH_UNITS, "device.thickness_d"),
        mobility_v=_quantity(data["mobility_v"], _MOBILITY_UNITS, "device.mobility_v"),
        mobility_e=_quantity(
            data.get("mobility_e", DEFAULT_MOBILITY_E), _MOBILITY_UNITS, "device.mobility_e"
        ),
        assumption3_enforced=enforced,
    )
    for name in ("r_on", "r_off", "thickness_d", "mobility_v"):
        if getattr(params, name) <= 0:
            raise ConfigError(f"device.{name} must be positive, got {getattr(params, name)!r}")
    return params


def _parse_model(data: Any) -> FieldModel:
    data = _require_keys(
        data,
        allowed={"kind", "alpha", "beta", "half_width_t"},
        required={"kind"},
        where="model",
    )
    kind = data["kind"]
    if kind not in _MODEL_NAMES:
        raise ConfigError(f"model.kind: unknown model {kind!r}; expected one of {_MODEL_NAMES}")
    try:
        if kind == "uniform":
            _reject_extras(data, {"kind"}, "model")
            return Uniform()
        if kind == "approx-on":
            _reject_extras(data, {"kind"}, "model")
            return ApproxOn()
        if kind == "approx-off":
            _reject_extras(data, {"kind"}, "model")
            return ApproxOff()
        if kind == "approx-midpoint":
            _reject_extras(data, {"kind", "alpha", "beta"}, "model")
            return ApproxMidpoint(
                alpha=_number(data.get("alpha", 1.0), "model.alpha"),
                beta=_number(data.get("beta", 1.0), "model.beta"),
            )
        _reject_extras(data, {"kind", "half_width_t"}, "model")
        if "half_width_t" not in data:
            raise ConfigError("model: sigmoid requires half_width_t")
        return Sigmoid(
            half_width_t=_quantity(data["half_width_t"], _LENGTH_UNITS, "model.half_width_t")
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"model: {exc}") from exc


def _reject_extras(data: dict, allowed: set[str], where: str) -> None:
    extras = set(data) - allowed
    if extras:
        raise ConfigError(
            f"{where}: key(s) {sorted(extras)} do not apply to kind {data['kind']!r}"
        )


def _parse_window(data: Any) -> WindowSpec:
    if data is None:
        return WindowSpec()
    data = _require_keys(data, allowed={"kind", "p"}, required={"kind"}, where="window")
    p = data.get("p", 1)
    if isinstance(p, bool) or not isinstance(p, int):
        raise ConfigError(f"window.p: expected an integer, got {p!r}")
    try:
        return WindowSpec(kind=data["kind"], p=p)
    except ValueError as exc:
        raise ConfigError(f"window: {exc}") from exc


def _parse_drive(data: Any) -> DriveWaveform:
    data = _require_keys(
        data,
        allowed={"kind", "amplitude", "frequency", "phase", "breakpoints", "source"},
        required={"kind"},
        where="drive",
    )
    kind = data["kind"]
    try:
        if kind == "piecewise-linear":
            pts = data.get("breakpoints")
            if not isinstance(pts, list):
                raise ConfigError("drive.breakpoints: expected a list of [t, value] pairs")
            pairs = []
            for idx, item in enumerate(pts):
                if not isinstance(item, list) or len(item) != 2:
                    raise ConfigError(
                        f"drive.breakpoints[{idx}]: expected a [t, value] pair, got {item!r}"
                    )
                pairs.append(
                    (
                        _number(item[0], f"drive.breakpoints[{idx}][0]"),
                        _number(item[1], f"drive.breakpoints[{idx}][1]"),
                    )
                )
            return DriveWaveform.piecewise_linear(pairs, source=data.get("source", "voltage"))
        return DriveWaveform(
            kind=kind,
            amplitude=_number(data.get("amplitude", 0.0), "drive.amplitude"),
            frequency=_number(data.get("frequency", 0.0), "drive.frequency"),
            phase=_number(data.get("phase", 0.0), "drive.phase"),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"drive: {exc}") from exc


def parse_config(text: str) -> RunConfig:
    """Parse a JSON config document into a validated RunConfig."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"config parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    data = _require_keys(
        data,
        allowed={"device", "model", "window", "drive", "duration", "dt",
                 "integrator", "w0", "output_path", "output_format"},
        required={"device", "model", "drive", "duration", "dt"},
        where="config",
    )
    device = _parse_device(data["device"])
    integrator = data.get("integrator", "rk4")
    if integrator not in ("euler", "rk4"):
        raise ConfigError(f"integrator: expected 'euler' or 'rk4', got {integrator!r}")
    output_format = data.get("output_format", "csv")
    if output_format not in ("csv", "json"):
        raise ConfigError(f"output_format: expected 'csv' or 'json', got {output_format!r}")
    output_path = data.get("output_path")
    if output_path is not None and not isinstance(output_path, str):
        raise ConfigError(f"output_path: expected a string, got {output_path!r}")
    duration = _number(data["duration"], "duration")
    dt = _number(data["dt"], "dt")
    if duration <= 0:
        raise ConfigError(f"duration must be positive, got {duration!r}")
    if dt <= 0:
        raise ConfigError(f"dt must be positive, got {dt!r}")
    w0 = _quantity(data.get("w0", 0.0), _LENGTH_UNITS, "w0")
    if not (0.0 <= w0 <= device.thickness_d):
        raise ConfigError(f"w0 must lie in [0, {device.thickness_d!r}] m, got {w0!r}")
    return RunConfig(
        device=device,
        model=_parse_model(data["model"]),
        window=_parse_window(data.get("window")),
        drive=_parse_drive(data["drive"]),
        duration=duration,
        dt=dt,
        integrator=integrator,
        w0=w0,
        output_path=output_path,
        output_format=output_format,
    )


def model_name(model: FieldModel) -> str:
    """Config/CLI name of a field model."""
    if isinstance(model, Uniform):
        return "uniform"
    if isinstance(model, ApproxOn):
        return "approx-on"
    if isinstance(model, ApproxOff):
        return "approx-off"
    if isinstance(model, ApproxMidpoint):
        return "approx-midpoint"
    return "sigmoid"


def _model_dict(model: FieldModel) -> dict:
    name = model_name(model)
    if isinstance(model, ApproxMidpoint):
        return {"kind": name, "alpha": model.alpha, "beta": model.beta}
    if isinstance(model, Sigmoid):
        return {"kind": name, "half_width_t": model.half_width_t}
    return {"kind": name}


def config_dict(config: RunConfig) -> dict:
    """Plain-JSON representation of a RunConfig (SI numbers, no unit strings)."""
    drive = {"kind": config.drive.kind}
    if config.drive.kind == "piecewise-linear":
        drive["breakpoints"] = [list(p) for p in config.drive.breakpoints]
        drive["source"] = config.drive.source
    else:
        drive["amplitude"] = config.drive.amplitude
        if config.drive.kind in ("sine-voltage", "sine-current"):
            drive["frequency"] = config.drive.frequency
            drive["phase"] = config.drive.phase
    out: dict = {
        "device": {k: v for k, v in asdict(config.device).items()},
        "model": _model_dict(config.model),
        "window": {"kind": config.window.kind, "p": config.window.p},
        "drive": drive,
        "duration": config.duration,
        "dt": config.dt,
        "integrator": config.integrator,
        "w0": config.w0,
        "output_format": config.output_format,
    }
    if config.output_path is not None:
        out["output_path"] = config.output_path
    return out


def serialize_config(config: RunConfig) -> str:
    """JSON text such that parse_config(serialize_config(c)) == c."""
    return json.dumps(config_dict(config), indent=2, sort_keys=True)
