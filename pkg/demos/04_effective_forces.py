"""Which effective force drives the mean position?

For the escape run, the curves connect the tips of three force vectors at
each interior time sample: the measured second derivative of the mean
position (solid), the full expectation-value force (dashed), and the naive
Lorentz force built from the mean velocity and the field at the mean
position (dotted).  In a non-uniform field the naive version is far off;
only the expectation-value force tracks the measured acceleration.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from fluxfree import (
    Grid,
    LinearFluxFreeField,
    SolverConfig,
    build_hamiltonian,
    compute_series,
    evolve,
)

grid = Grid(n=200, half_width=10.0)
config = SolverConfig(dt=0.01, steps=60, alpha=5.0)
field = LinearFluxFreeField(B0=1.0, R=config.region_radius)

print("running the escape configuration ...")
states = evolve(config, grid, field)
ham = build_hamiltonian(grid, field, config.alpha)
series = compute_series(states, grid, ham, field, config.alpha,
                        config.dt, config.region_radius)

inner = slice(1, -1)
lhs = series.force_lhs[inner]
ehr = series.force_ehrenfest[inner]
lor = series.force_mean_lorentz[inner]

rms_e = np.sqrt(np.mean(np.sum((lhs - ehr) ** 2, axis=1)))
rms_l = np.sqrt(np.mean(np.sum((lhs - lor) ** 2, axis=1)))
print(f"RMS mismatch, expectation-value force: {rms_e:.3f}")
print(f"RMS mismatch, naive mean-velocity force: {rms_l:.3f}")

fig, ax = plt.subplots(figsize=(6, 5))
ax.plot(lhs[:, 0], lhs[:, 1], "C0-", label=r"$d^2\langle x\rangle/dt^2$")
ax.plot(ehr[:, 0], ehr[:, 1], "C1--", label="expectation-value force")
ax.plot(lor[:, 0], lor[:, 1], "C2:", label=r"$\alpha\,\langle v\rangle \times B(\langle x\rangle)$")
ax.set_xlabel(r"$f_x$")
ax.set_ylabel(r"$f_y$")
ax.legend()
ax.set_title("force-vector tip curves, escape run")

os.makedirs(os.path.join(os.path.dirname(__file__), "output"), exist_ok=True)
out = os.path.join(os.path.dirname(__file__), "output", "effective_forces.png")
fig.savefig(out, dpi=150, bbox_inches="tight")
print(f"saved {out}")
