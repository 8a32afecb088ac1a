"""Field along the device: the step, its single-point treatments, and the
sigmoid ladder.

The field is piece-wise uniform with a step at the boundary w.  The value
*at* w is undefined; each model assigns it one number.  Smoothing the step
with a logistic profile shows why the midpoint is the natural choice: every
smoothed curve passes through (w, (l_on + l_off)/2), whatever its width.

Run:  python demos/01_field_profiles.py
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

import memdrift as md

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

params = md.DeviceParams(r_on=1.0, r_off=160.0, thickness_d=1e-8, mobility_v=1e-14)
current = 1e-3
w = 0.37 * params.thickness_d

l_on, l_off = md.bulk_fields(params, current)
print("reference device: r_on=1 ohm, r_off=160 ohm, D=10 nm, I=1 mA")
print(f"  l_on  = {l_on:.6g} V/m   (field over the doped region)")
print(f"  l_off = {l_off:.6g} V/m   (field over the undoped region)")
print(f"  l_off / l_on = {l_off / l_on:g}")
print()
print("single-point treatments of the step value at w:")
for name, model in [
    ("approx-on      ", md.ApproxOn()),
    ("approx-off     ", md.ApproxOff()),
    ("approx-midpoint", md.ApproxMidpoint()),
    ("sigmoid (any t)", md.Sigmoid(half_width_t=1e-10)),
]:
    print(f"  {name}: {md.boundary_field(params, model, current):.6g} V/m")

# --- figure 1: the step field and the three candidate values at w -----------
fig, ax = plt.subplots(figsize=(7, 4.5))
profile = md.field_profile(params, md.ApproxMidpoint(), w, current, 400)
ax.plot(profile.x * 1e9, profile.field, color="tab:blue", lw=2, label="step field")
for model, label, color in [
    (md.ApproxOn(), "value = l_on", "tab:green"),
    (md.ApproxMidpoint(), "value = midpoint", "tab:orange"),
    (md.ApproxOff(), "value = l_off", "tab:red"),
]:
    ax.plot([w * 1e9], [md.boundary_field(params, model, current)], "o",
            color=color, ms=9, label=label)
ax.set_xlabel("x (nm)")
ax.set_ylabel("field (V/m)")
ax.set_title("Piece-wise uniform field with candidate values at the boundary")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "01_step_field.png", dpi=150)
print(f"\nwrote {OUT / '01_step_field.png'}")

# --- figure 2: sigmoid ladder, all curves crossing at the midpoint ----------
fig, ax = plt.subplots(figsize=(7, 4.5))
ax.plot(profile.x * 1e9, profile.field, color="tab:blue", lw=2, label="step")
for t_frac, color in [(0.001, "tab:red"), (0.008, "tab:orange"),
                      (0.015, "tab:green"), (0.025, "tab:cyan"), (0.05, "tab:purple")]:
    t = t_frac * params.thickness_d
    smooth = md.field_profile(params, md.Sigmoid(half_width_t=t), w, current, 2000)
    ax.plot(smooth.x * 1e9, smooth.field, color=color, lw=1.2, label=f"t = {t * 1e9:g} nm")
midpoint = (l_on + l_off) / 2
ax.plot([w * 1e9], [midpoint], "k*", ms=14, label="(w, midpoint)")
ax.set_xlim((w - 12 * 0.05 * params.thickness_d) * 1e9, (w + 12 * 0.05 * params.thickness_d) * 1e9)
ax.set_xlabel("x (nm)")
ax.set_ylabel("field (V/m)")
ax.set_title("Logistic smoothing: every half-width crosses the same midpoint")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig(OUT / "01_sigmoid_ladder.png", dpi=150)
print(f"wrote {OUT / '01_sigmoid_ladder.png'}")

value_at_w = md.field_at(params, md.Sigmoid(half_width_t=2e-10), w, w, current)
print(f"\nsigmoid field at x=w: {value_at_w:.10g} V/m  "
      f"(midpoint = {midpoint:.10g} V/m)")
