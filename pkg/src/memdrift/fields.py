"""Electric-field descriptions along the device for each boundary-motion model.

The field is piece-wise uniform: l_on = r_on*I/D over the doped region and
l_off = r_off*I/D over the undoped one, with a step at the boundary w.  The
step value at w itself is undefined; each model assigns it one number
(l_on, l_off, or a weighted midpoint) or smooths the step into a logistic
profile of half-width t.

Sign convention: the logistic weight H̄(x) = 1/(1 + exp(-(w-x)/t)) tends to
1 behind the boundary (x << w) and to 0 ahead of it, so the field profile is
composed as l_on + (l_off - l_on)*(1 - H̄(x)), which matches the step field
in both limits.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Union

import numpy as np

from .device import AssumptionWarning, DeviceParams, total_resistance

# Logistic exponents are clamped here before exponentiation (exp(709) is
# still finite in float64; 700 leaves headroom).
_EXP_CLAMP = 700.0


@dataclass(frozen=True)
class Uniform:
    """One uniform field V/D across the whole device; the boundary then sees
    I*R(w)/D, which depends on w and has no single-point step value."""


@dataclass(frozen=True)
class ApproxOn:
    """Step value at w taken as l_on (the field over the doped region)."""


@dataclass(frozen=True)
class ApproxOff:
    """Step value at w taken as l_off (the field over the undoped region)."""


@dataclass(frozen=True)
class ApproxMidpoint:
    """Step value at w taken as the weighted mean (a*l_on + b*l_off)/(a+b)."""

    alpha: float = 1.0
    beta: float = 1.0

    def __post_init__(self) -> None:
        if not (self.alpha > 0 and self.beta > 0):
            raise ValueError(
                f"midpoint weights must be positive, got alpha={self.alpha!r}, "
                f"beta={self.beta!r}"
            )


@dataclass(frozen=True)
class Sigmoid:
    """Logistic smoothing of the step over a boundary region of half-width
    half_width_t (m); the transition region spans about 2*half_width_t."""

    half_width_t: float

    def __post_init__(self) -> None:
        if not (self.half_width_t > 0):
            raise ValueError(
                f"half_width_t must be positive, got {self.half_width_t!r}"
            )


FieldModel = Union[Uniform, ApproxOn, ApproxOff, ApproxMidpoint, Sigmoid]


def check_model(params: DeviceParams, model: FieldModel) -> FieldModel:
    """Model/device compatibility diagnostics (non-fatal)."""
    if isinstance(model, Sigmoid) and model.half_width_t > params.thickness_d / 2:
        warnings.warn(
            f"sigmoid half-width {model.half_width_t:g} m exceeds half the device "
            f"thickness {params.thickness_d:g} m; the boundary region is expected "
            "to be thin compared with the device",
            AssumptionWarning,
            stacklevel=2,
        )
    return model


def effective_resistance(params: DeviceParams, model: FieldModel) -> float:
    """Resistance whose bulk field equals the model's value at the boundary.

    The boundary field of every single-point model is r_eff*I/D with r_eff
    independent of w; this returns that r_eff.
    """
    if isinstance(model, ApproxOn):
        return params.r_on
    if isinstance(model, ApproxOff):
        return params.r_off
    if isinstance(model, ApproxMidpoint):
        return (model.alpha * params.r_on + model.beta * params.r_off) / (
            model.alpha + model.beta
        )
    if isinstance(model, Sigmoid):
        # The logistic weight is exactly 1/2 at x = w, so the smoothed field
        # there is the unweighted midpoint for every half-width.
        return (params.r_on + params.r_off) / 2.0
    raise ValueError(
        "the uniform-field model has no w-independent boundary field; "
        "its drift follows I*R(w)/D"
    )


def bulk_fields(params: DeviceParams, current: float) -> tuple[float, float]:
    """(l_on, l_off): the uniform fields over the doped and undoped regions."""
    d = params.thickness_d
    return params.r_on * current / d, params.r_off * current / d


def boundary_field(params: DeviceParams, model: FieldModel, current: float) -> float:
    """Field value the model assigns at the boundary; independent of w."""
    return effective_resistance(params, model) * current / params.thickness_d


def smoothed_heaviside(x, w: float, half_width_t: float):
    """Logistic step weight 1/(1 + exp(-(w - x)/t)).

    1 for x well behind the boundary, 1/2 at x = w, 0 well ahead of it.
    Accepts scalars or arrays; overflow-safe for |w - x| >> t.
    """
    if not half_width_t > 0:
        raise ValueError(f"half_width_t must be positive, got {half_width_t!r}")
    z = np.clip((w - np.asarray(x, dtype=float)) / half_width_t, -_EXP_CLAMP, _EXP_CLAMP)
    out = 1.0 / (1.0 + np.exp(-z))
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class FieldProfile:
    """Sampled field along the device: x (m, strictly increasing) vs field (V/m)."""

    x: np.ndarray
    field: np.ndarray
    model: FieldModel
    current: float

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.x.tolist(), self.field.tolist()))


def field_at(
    params: DeviceParams, model: FieldModel, w: float, x: float, current: float
) -> float:
    """Field at a single position x for boundary position w."""
    _check_positions(params, w, np.asarray([x]))
    l_on, l_off = bulk_fields(params, current)
    if isinstance(model, Uniform):
        return current * total_resistance(params, w) / params.thickness_d
    if isinstance(model, Sigmoid):
        hbar = smoothed_heaviside(x, w, model.half_width_t)
        return l_on + (l_off - l_on) * (1.0 - hbar)
    if x < w:
        return l_on
    if x > w:
        return l_off
    return boundary_field(params, model, current)


def field_profile(
    params: DeviceParams,
    model: FieldModel,
    w: float,
    current: float,
    n_samples: int,
) -> FieldProfile:
    """Sample the field on a uniform grid over [0, D], with x = w included.

    Step models produce l_on for x < w, l_off for x > w and the model's
    single-point value exactly at x = w; the sigmoid model produces the
    logistic blend; the uniform model a flat I*R(w)/D.
    """
    if n_samples < 2:
        raise ValueError(f"n_samples must be at least 2, got {n_samples!r}")
    check_model(params, model)
    d = params.thickness_d
    grid = np.linspace(0.0, d, int(n_samples))
    _check_positions(params, w, grid)
    if w not in grid:
        grid = np.sort(np.append(grid, w))

    l_on, l_off = bulk_fields(params, current)
    if isinstance(model, Uniform):
        values = np.full_like(grid, current * total_resistance(params, w) / d)
    elif isinstance(model, Sigmoid):
        hbar = smoothed_heaviside(grid, w, model.half_width_t)
        values = l_on + (l_off - l_on) * (1.0 - hbar)
    else:
        values = np.where(grid < w, l_on, l_off)
        values[grid == w] = boundary_field(params, model, current)
    return FieldProfile(x=grid, field=values, model=model, current=current)


def _check_positions(params: DeviceParams, w: float, xs: np.ndarray) -> None:
    d = params.thickness_d
    if not math.isfinite(w) or w < 0.0 or w > d:
        raise ValueError(f"w must lie in [0, {d!r}] m, got {w!r}")
    if np.any(xs < 0.0) or np.any(xs > d):
        raise ValueError(f"positions must lie in [0, {d!r}] m")
