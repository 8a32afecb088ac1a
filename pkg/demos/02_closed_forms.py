"""Closed forms in the charge domain: w(q), M(q), and switching charges.

The three single-point treatments give w linear in q with slopes in the
ratio r_on : (r_on+r_off)/2 : r_off, so the charge needed to switch the
device fully spans a factor of 160 between them.  The whole-device uniform
field instead gives an exponentially decaying memristance.

Run:  python demos/02_closed_forms.py
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import memdrift as md

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

params = md.DeviceParams(r_on=1.0, r_off=160.0, thickness_d=1e-8, mobility_v=1e-14)

models = [
    ("approx-on", md.ApproxOn(), "tab:green"),
    ("approx-midpoint", md.ApproxMidpoint(), "tab:orange"),
    ("approx-off", md.ApproxOff(), "tab:red"),
    ("uniform", md.Uniform(), "tab:blue"),
]

print("charge to switch (w: 0 -> D), reference device:")
q_on = md.charge_to_switch(params, md.ApproxOn())
print(f"  {'model':<16} {'charge (C)':>12}   ratio vs approx-on")
for name, model, _ in models:
    q = md.charge_to_switch(params, model)
    print(f"  {name:<16} {q:>12.6g}   {q / q_on:.6g}")
print()
print("speed ratios at equal current (the headline numbers):")
on = md.boundary_speed(params, md.ApproxOn(), 1e-3, 0.0)
print(f"  midpoint / approx-on = {md.boundary_speed(params, md.ApproxMidpoint(), 1e-3, 0.0) / on:g}")
print(f"  approx-off / approx-on = {md.boundary_speed(params, md.ApproxOff(), 1e-3, 0.0) / on:g}")

# --- w(q) and M(q) per model -------------------------------------------------
fig, (ax_w, ax_m) = plt.subplots(1, 2, figsize=(11, 4.5))
for name, model, color in models:
    sol = md.solution(params, model)
    qs = np.linspace(0.0, sol.q_max, 400)
    ax_w.plot(qs, [sol.w_of_q(q) / params.thickness_d for q in qs], color=color, label=name)
    ax_m.plot(qs, [sol.m_of_q(q) for q in qs], color=color, label=name)
ax_w.set_xlabel("q (C)")
ax_w.set_ylabel("w / D")
ax_w.set_xscale("log")
ax_w.set_title("boundary position vs charge")
ax_w.legend()
ax_m.set_xlabel("q (C)")
ax_m.set_ylabel("M(q) (ohm)")
ax_m.set_xscale("log")
ax_m.set_title("memristance vs charge")
ax_m.legend()
fig.tight_layout()
fig.savefig(OUT / "02_closed_forms.png", dpi=150)
print(f"\nwrote {OUT / '02_closed_forms.png'}")

# --- the simplified linear memristance vs the full quadratic form ------------
q_grid = np.linspace(0.0, md.charge_to_switch(params, md.ApproxOn()), 200)
full = np.array([md.memristance_of_q(params, md.ApproxOn(), q) for q in q_grid])
simplified = np.array([md.strukov_simplified_memristance(params, q) for q in q_grid])
print("\nl_on treatment: dropping the mu*r_on^2*q/D^2 term")
print(f"  max |full - simplified| = {np.max(np.abs(full - simplified)):.4g} ohm "
      f"(= r_on/r_off = {params.r_on / params.r_off:.4g} of the linear term)")

fig, ax = plt.subplots(figsize=(7, 4.5))
ax.plot(q_grid, full, label="full quadratic form")
ax.plot(q_grid, simplified, "--", label="simplified (r_on^2 term dropped)")
ax.set_xlabel("q (C)")
ax.set_ylabel("M(q) (ohm)")
ax.set_title("Simplification error stays below r_on/r_off of the swing")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "02_simplified_vs_full.png", dpi=150)
print(f"wrote {OUT / '02_simplified_vs_full.png'}")
