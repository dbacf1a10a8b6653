"""Profile of the flux-free field and the escape speed it sets.

The field drops linearly through zero inside the disk, so its net flux
vanishes; that pins the azimuthal potential to zero at both the center and
the rim.  The peak of |A| then acts as a momentum barrier: a particle
launched from the center escapes only above |q| A_max / m.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from fluxfree import LinearFluxFreeField

field = LinearFluxFreeField(B0=1.0, R=1.0, q=1.0, m=1.0)

print(f"flux through the disk: {field.flux():.2e} (flux-free by construction)")
print(f"escape speed |q| A_max / m = {field.escape_speed()}")
for v0 in (0.03, 0.06, 0.1, 0.12):
    print(f"  v0 = {v0:5.2f} -> bounding radius {field.bounding_radius(v0):.5f}")
print(f"  v0 =  0.15 -> bounding radius {field.bounding_radius(0.15)} (escapes)")

s = np.linspace(0.0, 1.4, 500)
fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6, 6), sharex=True)
ax1.plot(s, field.bz(s), "C0")
ax1.axhline(0.0, color="gray", lw=0.5)
ax1.axvline(1.0, color="gray", ls=":", label="region boundary")
ax1.set_ylabel(r"$B_z(s)$")
ax1.legend()

ax2.plot(s, field.a_phi(s), "C1")
ax2.axhline(field.a_max(), color="gray", ls="--", lw=0.8,
            label=r"$A_{max} = B_0 R / 8$")
ax2.axvline(1.0, color="gray", ls=":")
ax2.set_xlabel("s")
ax2.set_ylabel(r"$A_\phi(s)$")
ax2.legend()

os.makedirs(os.path.join(os.path.dirname(__file__), "output"), exist_ok=True)
out = os.path.join(os.path.dirname(__file__), "output", "field_profile.png")
fig.savefig(out, dpi=150, bbox_inches="tight")
print(f"saved {out}")
