"""Fixed-step transient integration of boundary motion, plus hysteresis metrics.

The state is the boundary position w; dw/dt = mu_v * L * f(w/D), where L is
the model's field at the boundary (I*R(w)/D for the whole-device uniform
field) and f an optional edge window.  Under voltage drive the current is
resolved algebraically as I = V/R(w) at every integrator stage, which is
sound because R(w) > 0 always.  Charge is bookkept trapezoidally from the
sampled current, separate from the w integration.

Integration is deterministic: fixed step, no adaptivity, identical inputs
give bit-identical traces.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, replace
from typing import Callable, Iterable

import numpy as np

from .device import BoundaryState, DeviceParams, validate_params
from .fields import FieldModel, Uniform, check_model, effective_resistance

_DRIVE_KINDS = (
    "sine-voltage",
    "sine-current",
    "constant-voltage",
    "constant-current",
    "piecewise-linear",
)
_PERIODIC_KINDS = ("sine-voltage", "sine-current")
_WINDOW_KINDS = ("none", "joglekar", "biolek")
_INTEGRATORS = ("euler", "rk4")


@dataclass(frozen=True)
class DriveWaveform:
    """Time-parameterized electrical drive.

    For the sine kinds the value is amplitude*sin(2*pi*frequency*t + phase);
    constants ignore frequency/phase; piecewise-linear interpolates the
    breakpoints and holds the last value afterwards.  `source` decides
    whether a piecewise-linear value is a voltage or a current.
    """

    kind: str
    amplitude: float = 0.0
    frequency: float = 0.0
    phase: float = 0.0
    breakpoints: tuple[tuple[float, float], ...] = ()
    source: str = "voltage"

    def __post_init__(self) -> None:
        if self.kind not in _DRIVE_KINDS:
            raise ValueError(f"unknown drive kind {self.kind!r}; expected one of {_DRIVE_KINDS}")
        if self.kind in _PERIODIC_KINDS:
            if not (math.isfinite(self.frequency) and self.frequency > 0):
                raise ValueError(f"frequency must be positive for {self.kind!r}, got {self.frequency!r}")
        if self.kind == "piecewise-linear":
            pts = tuple((float(t), float(val)) for t, val in self.breakpoints)
            if len(pts) < 2:
                raise ValueError("piecewise-linear drive needs at least 2 breakpoints")
            if any(b[0] <= a[0] for a, b in zip(pts, pts[1:])):
                raise ValueError("breakpoint times must be strictly increasing")
            object.__setattr__(self, "breakpoints", pts)
        if self.source not in ("voltage", "current"):
            raise ValueError(f"source must be 'voltage' or 'current', got {self.source!r}")

    @property
    def is_current(self) -> bool:
        """True when the waveform value is a current rather than a voltage."""
        if self.kind == "piecewise-linear":
            return self.source == "current"
        return self.kind in ("sine-current", "constant-current")

    @classmethod
    def sine_voltage(cls, amplitude: float, frequency: float, phase: float = 0.0) -> "DriveWaveform":
        return cls(kind="sine-voltage", amplitude=amplitude, frequency=frequency, phase=phase)

    @classmethod
    def sine_current(cls, amplitude: float, frequency: float, phase: float = 0.0) -> "DriveWaveform":
        return cls(kind="sine-current", amplitude=amplitude, frequency=frequency, phase=phase)

    @classmethod
    def constant_voltage(cls, value: float) -> "DriveWaveform":
        return cls(kind="constant-voltage", amplitude=value)

    @classmethod
    def constant_current(cls, value: float) -> "DriveWaveform":
        return cls(kind="constant-current", amplitude=value)

    @classmethod
    def piecewise_linear(
        cls, breakpoints: Iterable[tuple[float, float]], source: str = "voltage"
    ) -> "DriveWaveform":
        return cls(kind="piecewise-linear", breakpoints=tuple(breakpoints), source=source)


def drive_value(drive: DriveWaveform, t: float) -> float:
    """Waveform value (V or A, per the drive kind) at time t >= 0."""
    if not math.isfinite(t) or t < 0:
        raise ValueError(f"t must be a finite nonnegative time, got {t!r}")
    if drive.kind in _PERIODIC_KINDS:
        return drive.amplitude * math.sin(2.0 * math.pi * drive.frequency * t + drive.phase)
    if drive.kind in ("constant-voltage", "constant-current"):
        return drive.amplitude
    pts = drive.breakpoints
    if t < pts[0][0]:
        raise ValueError(f"t={t!r} precedes the first breakpoint at t={pts[0][0]!r}")
    if t >= pts[-1][0]:
        return pts[-1][1]
    j = bisect_right([p[0] for p in pts], t)
    (t0, v0), (t1, v1) = pts[j - 1], pts[j]
    return v0 + (v1 - v0) * (t - t0) / (t1 - t0)


@dataclass(frozen=True)
class WindowSpec:
    """Edge window: none, joglekar(p) or biolek(p)."""

    kind: str = "none"
    p: int = 1

    def __post_init__(self) -> None:
        if self.kind not in _WINDOW_KINDS:
            raise ValueError(f"unknown window kind {self.kind!r}; expected one of {_WINDOW_KINDS}")
        if not isinstance(self.p, int) or self.p < 1:
            raise ValueError(f"window exponent p must be an integer >= 1, got {self.p!r}")


def apply_window(w_norm: float, spec: WindowSpec, current_sign: float = 1.0) -> float:
    """Multiplicative boundary-speed factor at normalized position w/D.

    joglekar: 1 - (2x - 1)^(2p), zero at both edges.  biolek:
    1 - (x - stp(-i))^(2p), where stp is the unit step of the current
    direction, so only the edge the boundary is moving toward blocks.
    """
    if not (0.0 <= w_norm <= 1.0):
        raise ValueError(f"w_norm must lie in [0, 1], got {w_norm!r}")
    if spec.kind == "none":
        return 1.0
    if spec.kind == "joglekar":
        return 1.0 - (2.0 * w_norm - 1.0) ** (2 * spec.p)
    step = 1.0 if -current_sign >= 0 else 0.0
    return 1.0 - (w_norm - step) ** (2 * spec.p)


@dataclass(frozen=True, eq=False)
class SimulationTrace:
    """Time series of one transient run; all arrays share one length.

    Columns: t (s), v (V), i (A), w (m), r (ohm), q (C).  q is the running
    trapezoidal integral of i.  `saturated` records whether any sample sat
    at a rail while the field still pushed outward.
    """

    t: np.ndarray
    v: np.ndarray
    i: np.ndarray
    w: np.ndarray
    r: np.ndarray
    q: np.ndarray
    params: DeviceParams
    model: FieldModel
    drive: DriveWaveform
    window: WindowSpec
    dt: float
    integrator: str
    saturated: bool = False

    def __len__(self) -> int:
        return len(self.t)


def _make_funcs(
    params: DeviceParams,
    model: FieldModel,
    window: WindowSpec,
    drive: DriveWaveform,
) -> tuple[Callable[[float], float], Callable[[float, float], float], Callable[[float, float, bool], float]]:
    """Build (resistance, current, drift) closures for the inner loop.

    The drift closure clamps w into [0, D] before evaluation; with
    rail_guard=True it returns 0 at a rail when the drift points outward
    (hard clamp), otherwise the raw windowed drift.
    """
    d = params.thickness_d
    mu = params.mobility_v
    r_on, r_off = params.r_on, params.r_off
    uniform = isinstance(model, Uniform)
    r_eff = None if uniform else effective_resistance(params, model)
    drive_is_current = drive.is_current
    windowed = window.kind != "none"

    def resistance(w: float) -> float:
        x = w / d
        return r_on * x + r_off * (1.0 - x)

    def current(t: float, w: float) -> float:
        value = drive_value(drive, t)
        if drive_is_current:
            return value
        return value / resistance(w)

    def drift(t: float, w: float, rail_guard: bool = True) -> float:
        wc = 0.0 if w < 0.0 else (d if w > d else w)
        i = current(t, wc)
        if uniform:
            speed = mu * i * resistance(wc) / d
        else:
            speed = mu * r_eff * i / d
        if windowed:
            speed *= apply_window(wc / d, window, 1.0 if i >= 0 else -1.0)
        if rail_guard and ((wc <= 0.0 and speed < 0.0) or (wc >= d and speed > 0.0)):
            return 0.0
        return speed

    return resistance, current, drift


def _advance(
    drift: Callable[[float, float], float],
    t: float,
    w: float,
    dt: float,
    integrator: str,
) -> float:
    if integrator == "euler":
        return w + dt * drift(t, w)
    k1 = drift(t, w)
    k2 = drift(t + 0.5 * dt, w + 0.5 * dt * k1)
    k3 = drift(t + 0.5 * dt, w + 0.5 * dt * k2)
    k4 = drift(t + dt, w + dt * k3)
    return w + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0


def _check_integrator(integrator: str) -> str:
    name = integrator.lower()
    if name not in _INTEGRATORS:
        raise ValueError(f"unknown integrator {integrator!r}; expected one of {_INTEGRATORS}")
    return name


def step(
    state: BoundaryState,
    params: DeviceParams,
    model: FieldModel,
    window: WindowSpec,
    drive: DriveWaveform,
    dt: float,
    integrator: str = "rk4",
) -> BoundaryState:
    """Advance (w, q, t) by one step of size dt.

    w is clamped to [0, D] after the update; q accumulates the trapezoid of
    the endpoint currents.
    """
    if not (math.isfinite(dt) and dt > 0):
        raise ValueError(f"dt must be positive, got {dt!r}")
    if not all(math.isfinite(x) for x in (state.w, state.q, state.t)):
        raise ValueError(f"state must be finite, got {state!r}")
    d = params.thickness_d
    if not (0.0 <= state.w <= d):
        raise ValueError(f"state.w must lie in [0, {d!r}] m, got {state.w!r}")
    integrator = _check_integrator(integrator)
    _, current, drift = _make_funcs(params, model, window, drive)
    w_new = _advance(drift, state.t, state.w, dt, integrator)
    w_new = 0.0 if w_new < 0.0 else (d if w_new > d else w_new)
    i0 = current(state.t, state.w)
    i1 = current(state.t + dt, w_new)
    return BoundaryState(w=w_new, q=state.q + 0.5 * dt * (i0 + i1), t=state.t + dt)


def is_saturated(
    state: BoundaryState,
    params: DeviceParams,
    model: FieldModel,
    window: WindowSpec,
    drive: DriveWaveform,
) -> bool:
    """True when the state sits at a rail and the field still pushes outward."""
    d = params.thickness_d
    if 0.0 < state.w < d:
        return False
    _, _, drift = _make_funcs(params, model, window, drive)
    speed = drift(state.t, state.w, False)
    return (state.w <= 0.0 and speed < 0.0) or (state.w >= d and speed > 0.0)


def simulate(
    params: DeviceParams,
    model: FieldModel,
    window: WindowSpec,
    drive: DriveWaveform,
    duration: float,
    dt: float,
    integrator: str = "rk4",
    w0: float = 0.0,
) -> SimulationTrace:
    """Integrate boundary motion over [0, duration] with fixed step dt.

    Produces ceil(duration/dt) + 1 samples; the last step is shortened so
    the final sample lands exactly on `duration`.  Every sample satisfies
    v = r*i, and q is the running trapezoid of i.
    """
    params = validate_params(params)
    check_model(params, model)
    if not (math.isfinite(duration) and duration > 0):
        raise ValueError(f"duration must be positive, got {duration!r}")
    if not (math.isfinite(dt) and dt > 0):
        raise ValueError(f"dt must be positive, got {dt!r}")
    if dt >= duration:
        raise ValueError(f"dt={dt!r} must be smaller than duration={duration!r}")
    d = params.thickness_d
    if not (math.isfinite(w0) and 0.0 <= w0 <= d):
        raise ValueError(f"w0 must lie in [0, {d!r}] m, got {w0!r}")
    integrator = _check_integrator(integrator)

    resistance, current, drift = _make_funcs(params, model, window, drive)
    drive_is_current = drive.is_current

    n_steps = math.ceil(duration / dt)
    n = n_steps + 1
    t_arr = np.empty(n)
    v_arr = np.empty(n)
    i_arr = np.empty(n)
    w_arr = np.empty(n)
    r_arr = np.empty(n)
    q_arr = np.empty(n)

    saturated = False
    w = float(w0)
    q = 0.0
    i_prev = 0.0
    for k in range(n):
        t = duration if k == n_steps else k * dt
        r = resistance(w)
        raw = drive_value(drive, t)
        if drive_is_current:
            i = raw
            v = r * i
        else:
            v = raw
            i = v / r
        if k > 0:
            q += 0.5 * (t - t_arr[k - 1]) * (i_prev + i)
        t_arr[k] = t
        v_arr[k] = v
        i_arr[k] = i
        w_arr[k] = w
        r_arr[k] = r
        q_arr[k] = q
        i_prev = i

        if k == n_steps:
            break
        t_next = duration if k + 1 == n_steps else (k + 1) * dt
        w_next = _advance(drift, t, w, t_next - t, integrator)
        if w_next < 0.0 or w_next > d:
            w_next = 0.0 if w_next < 0.0 else d
            saturated = True
        elif w_next == 0.0 or w_next == d:
            speed = drift(t_next, w_next, False)
            if (w_next == 0.0 and speed < 0.0) or (w_next == d and speed > 0.0):
                saturated = True
        w = w_next

    return SimulationTrace(
        t=t_arr, v=v_arr, i=i_arr, w=w_arr, r=r_arr, q=q_arr,
        params=params, model=model, drive=drive, window=window,
        dt=dt, integrator=integrator, saturated=saturated,
    )


def loop_area(trace: SimulationTrace) -> float:
    """Unsigned shoelace area enclosed by the (V, I) loop over the last full
    drive period.

    A pinched loop is a figure of eight: its two lobes carry opposite
    orientation, so the raw signed shoelace sum of the whole period cancels
    to zero however wide the lobes are.  The curve is therefore split at the
    voltage sign changes (where the loop pinches through the origin) and the
    absolute lobe areas are summed.
    """
    drive = trace.drive
    if drive.kind not in _PERIODIC_KINDS:
        raise ValueError(f"loop area requires a periodic drive, got kind {drive.kind!r}")
    period = 1.0 / drive.frequency
    t = trace.t
    span = t[-1] - t[0]
    if span < period * (1.0 - 1e-9):
        raise ValueError(
            f"trace spans {span:g} s, shorter than one drive period ({period:g} s)"
        )
    start = int(np.searchsorted(t, t[-1] - period * (1.0 + 1e-12)))
    x = trace.v[start:]
    y = trace.i[start:]
    x2 = np.roll(x, -1)
    y2 = np.roll(y, -1)
    increments = 0.5 * (x * y2 - x2 * y)
    # Lobe boundary wherever v changes sign across an increment (a lobe is
    # entered/left only through the pinch point, where the increment itself
    # is negligible, so assigning the straddling increment to one side is
    # harmless).
    sgn = np.sign(x)
    sgn2 = np.roll(sgn, -1)
    boundary = (sgn * sgn2 < 0) | ((sgn == 0) & (sgn2 != 0))
    lobe = np.concatenate([[0], np.cumsum(boundary[:-1])])
    total = 0.0
    for lobe_id in np.unique(lobe):
        total += abs(float(np.sum(increments[lobe == lobe_id])))
    return total


def pinch_residual(trace: SimulationTrace) -> float:
    """Largest |I| linearly interpolated at the voltage zero crossings.

    A memristor's I-V loop is pinched at the origin; this measures how far
    the sampled loop misses it.
    """
    v = trace.v
    i = trace.i
    residuals = [float(x) for x in np.abs(i[v == 0.0])]
    lo, hi = v[:-1], v[1:]
    mask = lo * hi < 0.0
    if np.any(mask):
        i0, i1 = trace.i[:-1][mask], trace.i[1:][mask]
        v0, v1 = lo[mask], hi[mask]
        s = v0 / (v0 - v1)
        residuals.extend(float(x) for x in np.abs(i0 + (i1 - i0) * s))
    if len(residuals) < 2:
        raise ValueError(
            f"no zero crossings: need at least 2 voltage zero crossings, found {len(residuals)}"
        )
    return max(residuals)


def frequency_sweep(
    params: DeviceParams,
    model: FieldModel,
    window: WindowSpec,
    base_drive: DriveWaveform,
    frequencies: Iterable[float],
    *,
    periods: int = 3,
    steps_per_period: int = 2000,
    integrator: str = "rk4",
    w0: float = 0.0,
) -> list[tuple[float, float]]:
    """Loop area per frequency, in input order.

    Each frequency is simulated over `periods` drive periods (>= 3 by
    default) and the area of the final period is measured.
    """
    freqs = [float(f) for f in frequencies]
    if len(freqs) < 2:
        raise ValueError(f"need at least 2 frequencies, got {len(freqs)}")
    if any(not (math.isfinite(f) and f > 0) for f in freqs):
        raise ValueError("all frequencies must be positive")
    if base_drive.kind not in _PERIODIC_KINDS:
        raise ValueError(f"frequency sweep requires a sine drive, got {base_drive.kind!r}")

    results: list[tuple[float, float]] = []
    for f in freqs:
        drive = replace(base_drive, frequency=f)
        period = 1.0 / f
        trace = simulate(
            params, model, window, drive,
            duration=periods * period,
            dt=period / steps_per_period,
            integrator=integrator,
            w0=w0,
        )
        results.append((f, loop_area(trace)))
    return results
