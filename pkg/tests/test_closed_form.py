"""Closed forms: w(q), M(q), switching charge, boundary speed."""

from __future__ import annotations

import math

import numpy as np
import pytest

from memdrift import (
    ApproxMidpoint,
    ApproxOff,
    ApproxOn,
    DeviceParams,
    Sigmoid,
    Uniform,
    boundary_speed,
    charge_to_switch,
    memristance_of_q,
    solution,
    strukov_simplified_memristance,
    total_resistance,
    w_of_q,
)

PAPER = DeviceParams(r_on=1.0, r_off=160.0, thickness_d=1e-8, mobility_v=1e-14)
LINEAR_MODELS = [ApproxOn(), ApproxOff(), ApproxMidpoint()]
ALL_CLOSED = LINEAR_MODELS + [Uniform()]


def test_w_of_q_zero_charge_for_every_model():
    for model in ALL_CLOSED:
        assert w_of_q(PAPER, model, 0.0) == 0.0


def test_w_of_q_switching_charge_reaches_thickness():
    q_switch = PAPER.thickness_d**2 / (PAPER.mobility_v * PAPER.r_on)
    assert w_of_q(PAPER, ApproxOn(), q_switch) == pytest.approx(PAPER.thickness_d, rel=1e-14)


def test_w_of_q_rejects_bad_inputs():
    with pytest.raises(ValueError, match="q must be"):
        w_of_q(PAPER, ApproxOn(), -1e-6)
    with pytest.raises(ValueError, match="sigmoid"):
        w_of_q(PAPER, Sigmoid(half_width_t=1e-10), 1e-6)


def test_w_of_q_clamps_beyond_switching_charge():
    q_switch = charge_to_switch(PAPER, ApproxOff())
    assert w_of_q(PAPER, ApproxOff(), 10 * q_switch) == PAPER.thickness_d
    raw = w_of_q(PAPER, ApproxOff(), 10 * q_switch, clamp=False)
    assert raw > PAPER.thickness_d


def test_uniform_w_of_q_first_order_is_off_field_drift():
    # Taylor expansion of the exponential solution around q = 0.
    q = 1e-9 * charge_to_switch(PAPER, Uniform())
    expected = PAPER.mobility_v * PAPER.r_off * q / PAPER.thickness_d
    assert w_of_q(PAPER, Uniform(), q) == pytest.approx(expected, rel=1e-6)


def test_uniform_w_of_q_matches_charge_stepped_integration():
    # independent oracle: Euler in q on dw/dq = mu * R(w) / D
    d, mu = PAPER.thickness_d, PAPER.mobility_v
    q_end = 0.5 * charge_to_switch(PAPER, Uniform())
    n = 200_000
    dq = q_end / n
    w = 0.0
    for _ in range(n):
        w += mu * total_resistance(PAPER, w) / d * dq
    assert w_of_q(PAPER, Uniform(), q_end) == pytest.approx(w, rel=1e-5)


def test_memristance_starts_at_r_off():
    for model in ALL_CLOSED:
        assert memristance_of_q(PAPER, model, 0.0) == PAPER.r_off


def test_memristance_uniform_is_monotone_with_r_on_floor():
    q_max = charge_to_switch(PAPER, Uniform())
    qs = np.linspace(0.0, 2 * q_max, 400)
    rs = [memristance_of_q(PAPER, Uniform(), q) for q in qs]
    assert all(a >= b for a, b in zip(rs, rs[1:]))
    assert all(r >= PAPER.r_on for r in rs)
    assert memristance_of_q(PAPER, Uniform(), q_max) == pytest.approx(PAPER.r_on, rel=1e-12)


def test_memristance_matches_full_quadratic_expansion():
    # R(q) for the l_on treatment, written out before any term is dropped:
    # mu*r_on^2*q/D^2 + r_off - mu*r_on*r_off*q/D^2
    d, mu = PAPER.thickness_d, PAPER.mobility_v
    for q in np.linspace(0.0, 0.9 * charge_to_switch(PAPER, ApproxOn()), 50):
        expanded = (
            mu * PAPER.r_on**2 * q / d**2
            + PAPER.r_off
            - mu * PAPER.r_on * PAPER.r_off * q / d**2
        )
        assert memristance_of_q(PAPER, ApproxOn(), q) == pytest.approx(expanded, rel=1e-12)


def test_memristance_consistent_with_resistance_of_w_of_q():
    rng = np.random.default_rng(42)
    for _ in range(200):
        r_on = 10 ** rng.uniform(-0.3, 2)
        params = DeviceParams(
            r_on=r_on,
            r_off=r_on * 10 ** rng.uniform(1, 3),
            thickness_d=10 ** rng.uniform(-9, -6),
            mobility_v=10 ** rng.uniform(-16, -12),
        )
        for model in ALL_CLOSED:
            q = rng.uniform(0.0, 1.0) * charge_to_switch(params, model)
            direct = memristance_of_q(params, model, q)
            composed = total_resistance(params, w_of_q(params, model, q))
            assert direct == pytest.approx(composed, rel=1e-12)


def test_strukov_simplified_reference_points():
    assert strukov_simplified_memristance(PAPER, 0.0) == PAPER.r_off
    with pytest.raises(ValueError, match="q must be"):
        strukov_simplified_memristance(PAPER, -1.0)


def test_strukov_simplified_drops_exactly_the_squared_term():
    d, mu = PAPER.thickness_d, PAPER.mobility_v
    for q in np.linspace(0.0, charge_to_switch(PAPER, ApproxOn()), 25):
        full = memristance_of_q(PAPER, ApproxOn(), q)
        simplified = strukov_simplified_memristance(PAPER, q)
        dropped = mu * PAPER.r_on**2 * q / d**2
        assert full - simplified == pytest.approx(dropped, rel=1e-10, abs=1e-18)


def test_strukov_simplification_error_is_resistance_ratio():
    # dropped term / kept linear term = r_on / r_off = 1/160
    d, mu = PAPER.thickness_d, PAPER.mobility_v
    q = 0.5 * charge_to_switch(PAPER, ApproxOn())
    dropped = mu * PAPER.r_on**2 * q / d**2
    linear_term = mu * PAPER.r_on * PAPER.r_off * q / d**2
    assert dropped / linear_term == pytest.approx(1.0 / 160.0, rel=1e-15)


def test_charge_to_switch_ratios():
    q_on = charge_to_switch(PAPER, ApproxOn())
    q_off = charge_to_switch(PAPER, ApproxOff())
    q_mid = charge_to_switch(PAPER, ApproxMidpoint())
    assert q_on / q_mid == pytest.approx(80.5, rel=1e-12)
    assert q_on / q_off == pytest.approx(160.0, rel=1e-12)


def test_charge_to_switch_rejects_sigmoid():
    with pytest.raises(ValueError, match="sigmoid"):
        charge_to_switch(PAPER, Sigmoid(half_width_t=1e-10))


def test_charge_to_switch_against_charge_stepped_oracle():
    # lighter version of the acceptance check: 1e5 Euler micro-steps
    d, mu = PAPER.thickness_d, PAPER.mobility_v
    for model in ALL_CLOSED:
        expected = charge_to_switch(PAPER, model)
        if isinstance(model, Uniform):
            def dwdq(w):
                return mu * total_resistance(PAPER, w) / d
        else:
            r_eff = boundary_speed(PAPER, model, 1.0, 0.0) * d / mu
            def dwdq(w, _r=r_eff):
                return mu * _r / d
        dq = expected / 1e5
        w, n = 0.0, 0
        while w < d:
            w += dwdq(w) * dq
            n += 1
        assert n * dq == pytest.approx(expected, rel=3e-3)


def test_boundary_speed_reference_points():
    assert boundary_speed(PAPER, ApproxOn(), 0.0, 0.0) == 0.0
    mid = boundary_speed(PAPER, ApproxMidpoint(), 1e-4, 0.0)
    on = boundary_speed(PAPER, ApproxOn(), 1e-4, 0.0)
    assert mid / on == pytest.approx(80.5, rel=1e-12)
    # uniform field at w = D coincides with the l_on treatment
    assert boundary_speed(PAPER, Uniform(), 1e-4, PAPER.thickness_d) == pytest.approx(on, rel=1e-15)


def test_boundary_speed_is_charge_derivative_times_current():
    for model in LINEAR_MODELS:
        q_probe = 1e-9
        dwdq = w_of_q(PAPER, model, q_probe, clamp=False) / q_probe
        for current in (1e-6, -2e-3, 0.7):
            assert boundary_speed(PAPER, model, current, 0.0) == pytest.approx(
                dwdq * current, rel=1e-12
            )


def test_w_of_q_homogeneous_in_q_for_linear_models():
    rng = np.random.default_rng(9)
    for model in LINEAR_MODELS:
        for _ in range(50):
            q = rng.uniform(0.0, 0.3) * charge_to_switch(PAPER, model)
            k = rng.uniform(0.1, 3.0)
            if k * q > charge_to_switch(PAPER, model):
                continue
            assert w_of_q(PAPER, model, k * q) == pytest.approx(
                k * w_of_q(PAPER, model, q), rel=1e-12
            )


def test_memristance_never_increases_with_charge():
    for model in ALL_CLOSED:
        q_max = charge_to_switch(PAPER, model)
        qs = np.linspace(0.0, q_max, 200)
        rs = [memristance_of_q(PAPER, model, q) for q in qs]
        assert all(a >= b for a, b in zip(rs, rs[1:]))


def test_uniform_memristance_satisfies_its_rate_equation():
    # dR/dq = -(mu*(r_off - r_on)/D^2) * R, checked by central differences
    d, mu = PAPER.thickness_d, PAPER.mobility_v
    rate = mu * (PAPER.r_off - PAPER.r_on) / d**2
    q_max = charge_to_switch(PAPER, Uniform())
    qs = np.linspace(0.01 * q_max, 0.95 * q_max, 100)
    h = 1e-6 * q_max
    for q in qs:
        r = memristance_of_q(PAPER, Uniform(), q)
        drdq = (memristance_of_q(PAPER, Uniform(), q + h)
                - memristance_of_q(PAPER, Uniform(), q - h)) / (2 * h)
        assert drdq == pytest.approx(-rate * r, rel=1e-6)


def test_solution_bundle_endpoints():
    for model in ALL_CLOSED:
        sol = solution(PAPER, model)
        assert sol.w_of_q(0.0) == 0.0
        assert sol.m_of_q(0.0) == PAPER.r_off
        assert sol.w_of_q(sol.q_max) == pytest.approx(PAPER.thickness_d, rel=1e-12)
        assert sol.m_of_q(sol.q_max) == pytest.approx(PAPER.r_on, rel=1e-12)
        assert not sol.saturated(0.5 * sol.q_max)
        assert sol.saturated(1.5 * sol.q_max)


def test_solution_rejects_sigmoid():
    with pytest.raises(ValueError, match="sigmoid"):
        solution(PAPER, Sigmoid(half_width_t=1e-10))
