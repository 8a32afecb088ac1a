"""Config ingestion and the command-line surfaces (files, schemas, exit codes)."""

from __future__ import annotations

import json
import math

import numpy as np
import pytest

from memdrift import (
    ApproxMidpoint,
    ConfigError,
    Sigmoid,
    Uniform,
    charge_to_switch,
    memristance_of_q,
    parse_config,
    serialize_config,
)
from memdrift.cli import main

BASE_CONFIG = {
    "device": {
        "r_on": 100.0,
        "r_off": 16000.0,
        "thickness_d": "10 nm",
        "mobility_v": "1e-10 cm2/Vs",
    },
    "model": {"kind": "approx-on"},
    "drive": {"kind": "constant-current", "amplitude": 1e-3},
    "duration": 0.001,
    "dt": 1e-5,
}


def write_config(tmp_path, overrides=None, **top_level):
    data = json.loads(json.dumps(BASE_CONFIG))
    for key, value in (overrides or {}).items():
        data[key] = value
    data.update(top_level)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data))
    return str(path)


def read_csv(path):
    header = None
    rows = []
    for line in open(path):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = line.split(",")
        else:
            rows.append(line.split(","))
    return header, rows


# --- config parsing ----------------------------------------------------------

def test_parse_config_normalizes_units():
    config = parse_config(json.dumps(BASE_CONFIG))
    assert config.device.thickness_d == pytest.approx(1e-8, rel=1e-15)
    assert config.device.mobility_v == pytest.approx(1e-14, rel=1e-15)
    assert config.window.kind == "none"  # documented default
    assert config.integrator == "rk4"
    assert config.w0 == 0.0


def test_parse_config_rejects_negative_resistance():
    bad = json.loads(json.dumps(BASE_CONFIG))
    bad["device"]["r_on"] = -1.0
    with pytest.raises(ConfigError, match="device.r_on"):
        parse_config(json.dumps(bad))


def test_parse_config_rejects_unknown_keys():
    bad = json.loads(json.dumps(BASE_CONFIG))
    bad["devise"] = {}
    with pytest.raises(ConfigError, match="devise"):
        parse_config(json.dumps(bad))
    bad = json.loads(json.dumps(BASE_CONFIG))
    bad["device"]["r_onn"] = 1.0
    with pytest.raises(ConfigError, match="r_onn"):
        parse_config(json.dumps(bad))


def test_parse_config_rejects_unknown_unit():
    bad = json.loads(json.dumps(BASE_CONFIG))
    bad["device"]["thickness_d"] = "10 furlong"
    with pytest.raises(ConfigError, match="unknown unit"):
        parse_config(json.dumps(bad))


def test_parse_config_reports_json_position():
    with pytest.raises(ConfigError, match="line"):
        parse_config("{\n  broken\n}")


def test_parse_config_model_variants():
    cfg = json.loads(json.dumps(BASE_CONFIG))
    cfg["model"] = {"kind": "approx-midpoint", "alpha": 2.0, "beta": 3.0}
    parsed = parse_config(json.dumps(cfg))
    assert parsed.model == ApproxMidpoint(alpha=2.0, beta=3.0)
    cfg["model"] = {"kind": "sigmoid", "half_width_t": "0.5 nm"}
    parsed = parse_config(json.dumps(cfg))
    assert parsed.model == Sigmoid(half_width_t=5e-10)
    cfg["model"] = {"kind": "uniform", "alpha": 1.0}
    with pytest.raises(ConfigError, match="do not apply"):
        parse_config(json.dumps(cfg))


def test_config_round_trip():
    cfg = json.loads(json.dumps(BASE_CONFIG))
    cfg["model"] = {"kind": "sigmoid", "half_width_t": "0.5 nm"}
    cfg["window"] = {"kind": "biolek", "p": 2}
    cfg["drive"] = {"kind": "sine-voltage", "amplitude": 1.0, "frequency": 200.0, "phase": 0.5}
    cfg["w0"] = "5 nm"
    config = parse_config(json.dumps(cfg))
    assert parse_config(serialize_config(config)) == config


def test_config_round_trip_piecewise_linear():
    cfg = json.loads(json.dumps(BASE_CONFIG))
    cfg["drive"] = {
        "kind": "piecewise-linear",
        "source": "current",
        "breakpoints": [[0.0, 0.0], [0.5e-3, 1e-3], [1e-3, 0.0]],
    }
    config = parse_config(json.dumps(cfg))
    assert parse_config(serialize_config(config)) == config


# --- simulate ----------------------------------------------------------------

def test_cmd_simulate_writes_schema_stable_csv(tmp_path):
    config = write_config(tmp_path)
    out = tmp_path / "trace.csv"
    assert main(["simulate", "--config", config, "--out", str(out)]) == 0
    header, rows = read_csv(out)
    assert header == ["t_s", "v_V", "i_A", "w_m", "r_ohm", "q_C"]
    assert len(rows) == math.ceil(0.001 / 1e-5) + 1
    # final resistance agrees with the closed form at q = I * duration
    parsed = parse_config(open(config).read())
    expected = memristance_of_q(parsed.device, parsed.model, 1e-3 * 0.001)
    assert float(rows[-1][4]) == pytest.approx(expected, rel=1e-8)


def test_cmd_simulate_reruns_byte_identical(tmp_path):
    config = write_config(tmp_path)
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    assert main(["simulate", "--config", config, "--out", str(out_a)]) == 0
    assert main(["simulate", "--config", config, "--out", str(out_b)]) == 0
    assert out_a.read_bytes() == out_b.read_bytes()


def test_cmd_simulate_json_output(tmp_path):
    config = write_config(tmp_path, output_format="json")
    out = tmp_path / "trace.json"
    assert main(["simulate", "--config", config, "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert set(doc["columns"]) == {"t_s", "v_V", "i_A", "w_m", "r_ohm", "q_C"}
    assert doc["meta"]["model"] == "approx-on"


def test_cmd_simulate_rejects_zero_duration_before_writing(tmp_path):
    config = write_config(tmp_path, duration=0.0)
    out = tmp_path / "never.csv"
    assert main(["simulate", "--config", config, "--out", str(out)]) == 1
    assert not out.exists()


def test_cmd_simulate_sidecar_opt_in(tmp_path):
    config = write_config(tmp_path)
    out = tmp_path / "trace.csv"
    assert main(["simulate", "--config", config, "--out", str(out), "--sidecar"]) == 0
    sidecar = json.loads((tmp_path / "trace.csv.meta.json").read_text())
    assert "written_at" in sidecar
    assert sidecar["config"]["device"]["r_on"] == 100.0


def test_missing_config_file_is_a_validation_error(tmp_path):
    assert main(["simulate", "--config", str(tmp_path / "nope.json")]) == 1


def test_unwritable_output_is_an_io_error(tmp_path):
    config = write_config(tmp_path)
    assert main(["simulate", "--config", config,
                 "--out", str(tmp_path / "no_such_dir" / "x.csv")]) == 2


def test_usage_errors_exit_1():
    assert main(["simulate"]) == 1  # --config missing
    assert main(["no-such-command"]) == 1


def test_help_exits_0(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()


# --- compare -----------------------------------------------------------------

def test_cmd_compare_reproduces_speed_ratios(tmp_path):
    config = write_config(tmp_path)
    out = tmp_path / "compare.csv"
    assert main(["compare", "--config", config,
                 "--models", "approx-on,approx-midpoint,approx-off",
                 "--out", str(out)]) == 0
    header, rows = read_csv(out)
    ratios = {row[0]: float(row[header.index("speed_ratio_min")]) for row in rows}
    assert ratios["approx-on"] == pytest.approx(1.0, rel=1e-12)
    assert ratios["approx-midpoint"] == pytest.approx(80.5, rel=1e-12)
    assert ratios["approx-off"] == pytest.approx(160.0, rel=1e-12)
    charges = {row[0]: float(row[header.index("charge_to_switch_C")]) for row in rows}
    parsed = parse_config(open(config).read())
    assert charges["approx-on"] == pytest.approx(
        charge_to_switch(parsed.device, parsed.model), rel=1e-12
    )


def test_cmd_compare_duplicate_model_gives_unit_ratios(tmp_path):
    config = write_config(tmp_path)
    out = tmp_path / "compare.csv"
    assert main(["compare", "--config", config,
                 "--models", "approx-on,approx-on", "--out", str(out)]) == 0
    header, rows = read_csv(out)
    for row in rows:
        assert float(row[header.index("speed_ratio_min")]) == pytest.approx(1.0, rel=1e-12)
        assert float(row[header.index("speed_ratio_max")]) == pytest.approx(1.0, rel=1e-12)
        assert float(row[header.index("charge_ratio")]) == pytest.approx(1.0, rel=1e-12)


def test_cmd_compare_uniform_reports_speed_range(tmp_path):
    config = write_config(tmp_path)
    out = tmp_path / "compare.csv"
    assert main(["compare", "--config", config,
                 "--models", "approx-on,uniform", "--out", str(out)]) == 0
    header, rows = read_csv(out)
    parsed = parse_config(open(config).read())
    d, mu = parsed.device.thickness_d, parsed.device.mobility_v
    uniform = next(r for r in rows if r[0] == "uniform")
    lo = float(uniform[header.index("speed_min_m_per_s")])
    hi = float(uniform[header.index("speed_max_m_per_s")])
    assert lo == pytest.approx(mu * parsed.device.r_on * 1e-3 / d, rel=1e-12)
    assert hi == pytest.approx(mu * parsed.device.r_off * 1e-3 / d, rel=1e-12)


def test_cmd_compare_needs_two_models(tmp_path):
    config = write_config(tmp_path)
    assert main(["compare", "--config", config, "--models", "approx-on"]) == 1


# --- field-profile -----------------------------------------------------------

def test_cmd_field_profile_step_has_single_discontinuity_at_w(tmp_path):
    config = write_config(tmp_path)
    out = tmp_path / "profile.csv"
    assert main(["field-profile", "--config", config, "--w", "3.7 nm",
                 "--samples", "100", "--out", str(out)]) == 0
    header, rows = read_csv(out)
    assert header == ["x_m", "field_V_per_m"]
    x = np.array([float(r[0]) for r in rows])
    field = np.array([float(r[1]) for r in rows])
    w = 3.7 * 1e-9  # the same arithmetic the unit parser performs
    parsed = parse_config(open(config).read())
    d = parsed.device.thickness_d
    l_on = parsed.device.r_on * 1e-3 / d
    l_off = parsed.device.r_off * 1e-3 / d
    assert np.all(field[x < w] == l_on)
    assert np.all(field[x > w] == l_off)
    assert field[x == w] == pytest.approx(l_on)  # approx-on value at the step
    changes = np.nonzero(np.diff(field))[0]
    # a single jump; its left edge is the w sample itself because the
    # approx-on step value coincides with l_on
    assert len(changes) == 1
    assert x[changes[0]] == w


def test_cmd_field_profile_sigmoid_ladder_intersects_at_midpoint(tmp_path):
    config = write_config(
        tmp_path, overrides={"model": {"kind": "sigmoid", "half_width_t": "0.5 nm"}}
    )
    out = tmp_path / "profile.csv"
    assert main(["field-profile", "--config", config, "--w", "5 nm",
                 "--samples", "200", "--out", str(out),
                 "--half-widths", "0.005 nm,0.05 nm,0.5 nm,5 nm"]) == 0
    parsed = parse_config(open(config).read())
    d = parsed.device.thickness_d
    midpoint = (parsed.device.r_on + parsed.device.r_off) / 2 * 1e-3 / d
    for t in ("5e-12", "5e-11", "5e-10", "5e-09"):
        header, rows = read_csv(tmp_path / f"profile_t{t}.csv")
        values = {float(r[0]): float(r[1]) for r in rows}
        assert values[5e-9] == pytest.approx(midpoint, rel=1e-12)


def test_cmd_field_profile_rejects_single_sample(tmp_path):
    config = write_config(tmp_path)
    assert main(["field-profile", "--config", config, "--w", "1 nm",
                 "--samples", "1"]) == 1


# --- charge ------------------------------------------------------------------

def test_cmd_charge_table(tmp_path):
    config = write_config(tmp_path)
    out = tmp_path / "charge.csv"
    assert main(["charge", "--config", config, "--out", str(out)]) == 0
    header, rows = read_csv(out)
    assert header == ["model", "charge_to_switch_C"]
    parsed = parse_config(open(config).read())
    table = {row[0]: float(row[1]) for row in rows}
    assert table["approx-on"] == pytest.approx(
        parsed.device.thickness_d**2 / (parsed.device.mobility_v * parsed.device.r_on),
        rel=1e-12,
    )
    assert table["approx-on"] / table["approx-off"] == pytest.approx(160.0, rel=1e-12)
    assert table["uniform"] == pytest.approx(
        charge_to_switch(parsed.device, Uniform()), rel=1e-12
    )


# --- freq-sweep --------------------------------------------------------------

def sweep_config(tmp_path):
    return write_config(
        tmp_path,
        overrides={
            "model": {"kind": "approx-midpoint"},
            "drive": {"kind": "sine-voltage", "amplitude": 1.0, "frequency": 200.0},
        },
        w0="5 nm",
    )


def test_cmd_freq_sweep_collapse(tmp_path):
    config = sweep_config(tmp_path)
    out = tmp_path / "sweep.csv"
    assert main(["freq-sweep", "--config", config, "--freqs", "200,2000",
                 "--steps-per-period", "500", "--out", str(out)]) == 0
    header, rows = read_csv(out)
    assert header == ["freq_Hz", "area_VA"]
    areas = [float(r[1]) for r in rows]
    assert areas[1] < areas[0]


def test_cmd_freq_sweep_duplicates_give_identical_rows(tmp_path):
    config = sweep_config(tmp_path)
    out = tmp_path / "sweep.csv"
    assert main(["freq-sweep", "--config", config, "--freqs", "500,500",
                 "--steps-per-period", "500", "--out", str(out)]) == 0
    _, rows = read_csv(out)
    assert rows[0][1] == rows[1][1]


def test_cmd_freq_sweep_empty_list_is_usage_error(tmp_path):
    config = sweep_config(tmp_path)
    assert main(["freq-sweep", "--config", config, "--freqs", ""]) == 1
    assert main(["freq-sweep", "--config", config]) == 1
