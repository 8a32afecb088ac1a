"""Pinched hysteresis loops and the frequency collapse.

Driving the device with a sine voltage traces the memristor fingerprint:
an I-V loop pinched at the origin whose lobes shrink as the drive gets too
fast for the boundary to follow.

Run:  python demos/03_hysteresis.py
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import memdrift as md

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

params = md.DeviceParams(r_on=100.0, r_off=16000.0, thickness_d=1e-8, mobility_v=1e-14)
window = md.WindowSpec()
w0 = params.thickness_d / 2

# --- loops at three frequencies ----------------------------------------------
fig, ax = plt.subplots(figsize=(7, 5.5))
for f, color in [(200.0, "tab:blue"), (1000.0, "tab:orange"), (5000.0, "tab:green")]:
    period = 1.0 / f
    trace = md.simulate(params, md.ApproxMidpoint(), window,
                        md.DriveWaveform.sine_voltage(1.0, f),
                        duration=3 * period, dt=period / 4000, w0=w0)
    start = np.searchsorted(trace.t, trace.t[-1] - period)
    ax.plot(trace.v[start:], trace.i[start:] * 1e3, color=color, lw=1.2,
            label=f"{f:g} Hz   (area {md.loop_area(trace):.2e} V·A)")
    residual = md.pinch_residual(trace)
    print(f"f = {f:>6g} Hz: loop area {md.loop_area(trace):.4e} V·A, "
          f"pinch residual {residual:.2e} A "
          f"({residual / np.max(np.abs(trace.i)):.1e} of max |I|)")
ax.axhline(0.0, color="0.8", lw=0.5)
ax.axvline(0.0, color="0.8", lw=0.5)
ax.set_xlabel("V (V)")
ax.set_ylabel("I (mA)")
ax.set_title("Pinched hysteresis: lobes shrink as frequency rises")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "03_pinched_loops.png", dpi=150)
print(f"\nwrote {OUT / '03_pinched_loops.png'}")

# --- collapse across four decades --------------------------------------------
freqs = [200.0 * 10**k for k in range(4)]
results = md.frequency_sweep(params, md.ApproxMidpoint(), window,
                             md.DriveWaveform.sine_voltage(1.0, 1.0),
                             freqs, w0=w0)
print("\nfrequency sweep (last-period lobe area):")
for f, area in results:
    print(f"  {f:>10g} Hz -> {area:.4e} V·A")

fig, ax = plt.subplots(figsize=(6.5, 4.5))
ax.loglog([f for f, _ in results], [a for _, a in results], "o-")
ax.set_xlabel("drive frequency (Hz)")
ax.set_ylabel("loop area (V·A)")
ax.set_title("Hysteresis collapses above the response frequency")
ax.grid(True, which="both", alpha=0.3)
fig.tight_layout()
fig.savefig(OUT / "03_frequency_collapse.png", dpi=150)
print(f"wrote {OUT / '03_frequency_collapse.png'}")
