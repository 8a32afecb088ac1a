"""Boundary-drift memristor models.

A library for the two-resistor memristor with a moving doped/undoped
boundary: piece-wise uniform fields with the three single-point treatments
of the step at the boundary, a logistic-smoothed field, the whole-device
uniform field with its exponential memristance, closed-form solutions, a
fixed-step transient simulator cross-checked against them, and pinched
hysteresis fingerprint metrics.
"""

from .closed_form import (
    ClosedFormSolution,
    boundary_speed,
    charge_to_switch,
    memristance_of_q,
    solution,
    strukov_simplified_memristance,
    w_of_q,
)
from .config import ConfigError, RunConfig, model_name, parse_config, serialize_config
from .device import (
    ASSUMPTION3_RATIO,
    AssumptionWarning,
    BoundaryState,
    DEFAULT_MOBILITY_E,
    DeviceParams,
    effective_mobility,
    memristor_voltage,
    normalized_position,
    total_resistance,
    validate_params,
)
from .fields import (
    ApproxMidpoint,
    ApproxOff,
    ApproxOn,
    FieldModel,
    FieldProfile,
    Sigmoid,
    Uniform,
    boundary_field,
    bulk_fields,
    effective_resistance,
    field_at,
    field_profile,
    smoothed_heaviside,
)
from .simulate import (
    DriveWaveform,
    SimulationTrace,
    WindowSpec,
    apply_window,
    drive_value,
    frequency_sweep,
    is_saturated,
    loop_area,
    pinch_residual,
    simulate,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "ASSUMPTION3_RATIO",
    "ApproxMidpoint",
    "ApproxOff",
    "ApproxOn",
    "AssumptionWarning",
    "BoundaryState",
    "ClosedFormSolution",
    "ConfigError",
    "DEFAULT_MOBILITY_E",
    "DeviceParams",
    "DriveWaveform",
    "FieldModel",
    "FieldProfile",
    "RunConfig",
    "Sigmoid",
    "SimulationTrace",
    "Uniform",
    "WindowSpec",
    "apply_window",
    "boundary_field",
    "boundary_speed",
    "bulk_fields",
    "charge_to_switch",
    "drive_value",
    "effective_mobility",
    "effective_resistance",
    "field_at",
    "field_profile",
    "frequency_sweep",
    "is_saturated",
    "loop_area",
    "memristance_of_q",
    "memristor_voltage",
    "model_name",
    "normalized_position",
    "parse_config",
    "pinch_residual",
    "serialize_config",
    "simulate",
    "smoothed_heaviside",
    "solution",
    "step",
    "strukov_simplified_memristance",
    "total_resistance",
    "validate_params",
    "w_of_q",
]
