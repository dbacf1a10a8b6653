"""Trapped and escaping classical trajectories.

Three launches from the center of the field region, speeds increasing.
The two sub-threshold trajectories stay inside their predicted bounding
circles (green); the fast one crosses the boundary, exiting perpendicular
to it.
"""

import math
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from fluxfree import LinearFluxFreeField, exit_angle, run_trajectory

field = LinearFluxFreeField(B0=1.0, R=1.0, q=1.0, m=1.0)
print(f"escape speed: {field.escape_speed()}")

speeds = [0.06, 0.1, 0.2]
fig, axes = plt.subplots(1, 3, figsize=(12, 4))
theta = np.linspace(0.0, 2.0 * np.pi, 200)

for ax, v0 in zip(axes, speeds):
    result = run_trajectory(field, v0, t_max=40.0)
    ax.plot(result.xy[:, 0], result.xy[:, 1], "C0", lw=0.7)
    ax.plot(np.cos(theta), np.sin(theta), "k", lw=1.0)
    title = f"$v_0 = {v0}$: {result.outcome}"
    if result.outcome == "trapped":
        sbar = field.bounding_radius(v0)
        ax.plot(sbar * np.cos(theta), sbar * np.sin(theta), "g", lw=1.2)
        print(f"v0={v0}: trapped, max radius {result.max_radius:.5f} "
              f"vs bounding {sbar:.5f}")
    else:
        ang = exit_angle(result)
        print(f"v0={v0}: escaped at t={result.exit_state.t:.2f}, "
              f"exit angle {ang:.2e} rad from radial")
        title += f", exit angle {ang:.1e}"
    ax.set_title(title, fontsize=9)
    ax.set_aspect("equal")
    ax.set_xlim(-1.2, 1.2)
    ax.set_ylim(-1.2, 1.2)

os.makedirs(os.path.join(os.path.dirname(__file__), "output"), exist_ok=True)
out = os.path.join(os.path.dirname(__file__), "output", "classical_trajectories.png")
fig.savefig(out, dpi=150, bbox_inches="tight")
print(f"saved {out}")
