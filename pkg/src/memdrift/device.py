"""Two-resistor memristor law and device parameters.

The device is a slab of thickness D whose doped fraction w/D conducts at
r_on and whose undoped remainder at r_off.  All quantities are SI; unit
conversion belongs to config ingestion, not here.  Everything in this
module is a pure function of its inputs.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

# Electron mobility of the TiO2 system, m^2 V^-1 s^-1 (1e-6 cm^2/Vs).
DEFAULT_MOBILITY_E = 1e-10

# r_off/r_on below this ratio breaks the r_on << r_off working assumption.
ASSUMPTION3_RATIO = 10.0


class AssumptionWarning(UserWarning):
    """Parameters stray from a modelling assumption (non-fatal)."""


@dataclass(frozen=True)
class DeviceParams:
    """Physical constants of one device.

    r_on / r_off are the fully doped / fully undoped resistances (ohm),
    thickness_d the film thickness (m), mobility_v the dopant mobility and
    mobility_e the electron mobility (m^2 V^-1 s^-1).
    """

    r_on: float
    r_off: float
    thickness_d: float
    mobility_v: float
    mobility_e: float = DEFAULT_MOBILITY_E
    assumption3_enforced: bool = True


@dataclass(frozen=True)
class BoundaryState:
    """Dynamic state of one device: boundary position w (m), accumulated
    charge q (C) and time t (s)."""

    w: float
    q: float
    t: float


def validate_params(
    raw: DeviceParams, *, ratio_threshold: float = ASSUMPTION3_RATIO
) -> DeviceParams:
    """Check positivity constraints and return the parameters unchanged.

    Raises ValueError naming the offending field.  When assumption3_enforced
    is set and r_off/r_on falls below ratio_threshold, emits a non-fatal
    AssumptionWarning instead of failing.
    """
    for name in ("r_on", "r_off", "thickness_d", "mobility_v"):
        value = getattr(raw, name)
        if not isinstance(value, (int, float)) or not math.isfinite(value):
            raise ValueError(f"{name} must be a finite number, got {value!r}")
        if value <= 0:
            raise ValueError(f"{name} must be positive, got {value!r}")
    if not math.isfinite(raw.mobility_e) or raw.mobility_e < 0:
        raise ValueError(f"mobility_e must be finite and >= 0, got {raw.mobility_e!r}")
    if raw.assumption3_enforced and raw.r_off / raw.r_on < ratio_threshold:
        warnings.warn(
            f"r_off/r_on = {raw.r_off / raw.r_on:.4g} is below {ratio_threshold:g}; "
            "the model assumes r_on << r_off",
            AssumptionWarning,
            stacklevel=2,
        )
    return raw


def _check_boundary(params: DeviceParams, w: float) -> None:
    if not math.isfinite(w) or w < 0.0 or w > params.thickness_d:
        raise ValueError(
            f"w must lie in [0, {params.thickness_d!r}] m, got {w!r}"
        )


def normalized_position(params: DeviceParams, w: float) -> float:
    """Boundary position as the dimensionless fraction w/D in [0, 1]."""
    _check_boundary(params, w)
    return w / params.thickness_d


def total_resistance(params: DeviceParams, w: float) -> float:
    """Series resistance of the doped and undoped regions at boundary w.

    R(w) = r_on * (w/D) + r_off * (1 - w/D).  The two-term form is kept
    as written: both terms are nonnegative, so the sum never cancels.
    """
    _check_boundary(params, w)
    x = w / params.thickness_d
    return params.r_on * x + params.r_off * (1.0 - x)


def memristor_voltage(params: DeviceParams, w: float, current: float) -> float:
    """Instantaneous terminal voltage V = R(w) * I (ohmic at every instant)."""
    return total_resistance(params, w) * current


def effective_mobility(n_v: float, n_e: float, mu_v: float, mu_e: float) -> float:
    """Count-weighted mean mobility of a mixed vacancy/electron population.

    (n_v*mu_v + n_e*mu_e) / (n_v + n_e) -- the coefficient relating the
    average drift speed of all carriers to the local field.
    """
    if n_v < 0 or n_e < 0:
        raise ValueError(f"carrier counts must be >= 0, got n_v={n_v!r}, n_e={n_e!r}")
    if mu_v < 0 or mu_e < 0:
        raise ValueError(f"mobilities must be >= 0, got mu_v={mu_v!r}, mu_e={mu_e!r}")
    total = n_v + n_e
    if total == 0:
        raise ValueError("n_v + n_e must be positive; no carriers to average over")
    return (n_v * mu_v + n_e * mu_e) / total
