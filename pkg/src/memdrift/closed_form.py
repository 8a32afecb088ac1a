"""Closed-form boundary position and memristance as functions of charge.

For the single-point step models the boundary ODE has a constant drift
coefficient and w is linear in q; the whole-device uniform field gives an
exponential memristance instead.  These expressions are the oracles the
numerical simulator is checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial
from typing import Callable

from .device import DeviceParams, total_resistance, _check_boundary
from .fields import FieldModel, Sigmoid, Uniform, effective_resistance


def _require_charge(q: float) -> None:
    if not math.isfinite(q) or q < 0:
        raise ValueError(f"q must be a finite nonnegative charge, got {q!r}")


def _require_closed_form(model: FieldModel) -> None:
    if isinstance(model, Sigmoid):
        raise ValueError(
            "no closed form for the sigmoid-smoothed field; use the simulator"
        )


def w_of_q(
    params: DeviceParams, model: FieldModel, q: float, *, clamp: bool = True
) -> float:
    """Boundary position after charge q has passed, starting from w = 0.

    Linear models: mu_v * r_eff * q / D.  Uniform field:
    D * r_off * (exp(mu_v*(r_on - r_off)*q/D^2) - 1) / (r_on - r_off),
    evaluated through expm1 so small and large q are equally well
    conditioned.  Results are clamped to [0, D] unless clamp=False.
    """
    _require_charge(q)
    _require_closed_form(model)
    d = params.thickness_d
    if isinstance(model, Uniform):
        if params.r_on == params.r_off:
            w = params.mobility_v * params.r_on * q / d
        else:
            k = params.mobility_v * (params.r_on - params.r_off) / d**2
            w = d * params.r_off * math.expm1(k * q) / (params.r_on - params.r_off)
    else:
        w = params.mobility_v * effective_resistance(params, model) * q / d
    if clamp:
        return min(max(w, 0.0), d)
    return w


def memristance_of_q(params: DeviceParams, model: FieldModel, q: float) -> float:
    """Resistance after charge q, in closed form (floored at r_on).

    Linear models: r_off - mu_v * r_eff * (r_off - r_on) * q / D^2.
    Uniform field: r_off * exp(-mu_v*(r_off - r_on)*q/D^2).
    """
    _require_charge(q)
    _require_closed_form(model)
    d = params.thickness_d
    if isinstance(model, Uniform):
        k = params.mobility_v * (params.r_off - params.r_on) / d**2
        r = params.r_off * math.exp(-k * q)
    else:
        r_eff = effective_resistance(params, model)
        r = params.r_off - params.mobility_v * r_eff * (params.r_off - params.r_on) * q / d**2
    return max(r, params.r_on)


def strukov_simplified_memristance(params: DeviceParams, q: float) -> float:
    """The widely used simplified memristance r_off*(1 - mu_v*r_on*q/D^2).

    This is the published form in which the mu_v*r_on^2*q/D^2 term has been
    dropped on the grounds that r_on << r_off.  Returned unclamped, so it
    goes negative for large q exactly as the simplified expression does.
    """
    _require_charge(q)
    d = params.thickness_d
    return params.r_off * (1.0 - params.mobility_v * params.r_on * q / d**2)


def charge_to_switch(params: DeviceParams, model: FieldModel) -> float:
    """Smallest charge that carries the boundary across the full thickness.

    Linear models: D^2 / (mu_v * r_eff).  Uniform field:
    D^2 * ln(r_off/r_on) / (mu_v * (r_off - r_on)), the charge at which the
    exponential memristance reaches r_on.
    """
    _require_closed_form(model)
    d = params.thickness_d
    if isinstance(model, Uniform):
        if params.r_on == params.r_off:
            return d**2 / (params.mobility_v * params.r_on)
        return (
            d**2
            * math.log(params.r_off / params.r_on)
            / (params.mobility_v * (params.r_off - params.r_on))
        )
    return d**2 / (params.mobility_v * effective_resistance(params, model))


def boundary_speed(
    params: DeviceParams, model: FieldModel, current: float, w: float
) -> float:
    """Boundary drift speed dw/dt = mu_v * L at drive current `current`.

    Single-point models are independent of w; the uniform field follows the
    instantaneous resistance, mu_v * I * R(w) / D.
    """
    _check_boundary(params, w)
    d = params.thickness_d
    if isinstance(model, Uniform):
        return params.mobility_v * current * total_resistance(params, w) / d
    return params.mobility_v * effective_resistance(params, model) * current / d


@dataclass(frozen=True)
class ClosedFormSolution:
    """w(q) and M(q) for one model, valid on q in [0, q_max]."""

    model: FieldModel
    q_max: float
    w_of_q: Callable[[float], float]
    m_of_q: Callable[[float], float]

    def saturated(self, q: float) -> bool:
        """True when q lies beyond the switching charge (w pinned at D)."""
        return q > self.q_max


def solution(params: DeviceParams, model: FieldModel) -> ClosedFormSolution:
    """Bundle the closed forms for one (params, model) pair."""
    _require_closed_form(model)
    return ClosedFormSolution(
        model=model,
        q_max=charge_to_switch(params, model),
        w_of_q=partial(w_of_q, params, model),
        m_of_q=partial(memristance_of_q, params, model),
    )
