"""Radially symmetric planar magnetic fields on a disk and their gauge-fixed
azimuthal vector potentials.

A field profile supplies B_z(s) and A_phi(s) as functions of the radial
coordinate s.  The potential is pinned by A(0) = 0 (zero initial angular
momentum for a particle launched from the center) and, for flux-free
profiles, A(R) = 0 at the region boundary.  Everything downstream (escape
speed, bounding circle, Lorentz acceleration, the discrete magnetic
Hamiltonian) is expressed through this one interface, so alternative
profiles plug in by subclassing :class:`RadialField`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.optimize import brentq, minimize_scalar

__all__ = [
    "RadialField",
    "LinearFluxFreeField",
    "UniformField",
]


def _check_radius(s):
    """Validate s >= 0; returns a float for scalar input, ndarray otherwise."""
    if isinstance(s, np.ndarray):
        if np.any(s < 0):
            raise ValueError("radial coordinate must be non-negative")
        return s
    s = float(s)
    if s < 0:
        raise ValueError("radial coordinate must be non-negative")
    return s


@dataclass(frozen=True)
class RadialField:
    """Base class: out-of-plane field B_z(s) plus azimuthal potential A_phi(s).

    Parameters
    ----------
    B0 : float
        Field magnitude scale.  May be negative (reverses rotation sense).
    R : float
        Radius of the field region.
    q, m : float
        Charge and mass of the test particle moving in the field.

    Subclasses implement :meth:`bz` and :meth:`a_phi`; the generic escape
    machinery below works for any profile whose potential vanishes at the
    origin.
    """

    B0: float = 1.0
    R: float = 1.0
    q: float = 1.0
    m: float = 1.0

    def __post_init__(self):
        if self.R <= 0:
            raise ValueError("field region radius R must be positive")
        if self.m <= 0:
            raise ValueError("particle mass m must be positive")

    # -- profile (subclass responsibility) --------------------------------
    def bz(self, s):
        """Out-of-plane field B_z at radius s (scalar or array)."""
        raise NotImplementedError

    def a_phi(self, s):
        """Azimuthal potential magnitude A(s) at radius s (scalar or array)."""
        raise NotImplementedError

    # -- generic machinery -------------------------------------------------
    def a_cart(self, x, y):
        """Cartesian components (A_x, A_y) of A(s) phi-hat.

        phi-hat = (-y/s, x/s); the origin value is (0, 0), the continuous
        limit since A(0) = 0.
        """
        if isinstance(x, np.ndarray) or isinstance(y, np.ndarray):
            x = np.asarray(x, dtype=float)
            y = np.asarray(y, dtype=float)
            s = np.hypot(x, y)
            a = self.a_phi(s)
            with np.errstate(invalid="ignore", divide="ignore"):
                ax = np.where(s > 0, -a * y / s, 0.0)
                ay = np.where(s > 0, a * x / s, 0.0)
            return ax, ay
        s = float(np.hypot(x, y))
        if s == 0.0:
            return 0.0, 0.0
        a = self.a_phi(s)
        return -a * y / s, a * x / s

    def flux(self, n_quad: int = 1000) -> float:
        """Magnetic flux through the disk of radius R.

        Composite-Simpson quadrature of B_z(s) 2*pi*s over [0, R] with
        ``n_quad`` panels; exact to round-off for polynomial profiles.
        Vanishes for flux-free profiles.
        """
        if n_quad < 16:
            raise ValueError("n_quad must be at least 16")
        s = np.linspace(0.0, self.R, n_quad + 1)
        return float(simpson(self.bz(s) * 2.0 * np.pi * s, x=s))

    def a_max(self) -> float:
        """Maximum of |A(s)| over [0, R].

        Dense sampling (1e4 points) locates the peak; a golden-section
        refinement polishes it when the peak is interior.
        """
        s = np.linspace(0.0, self.R, 10_001)
        mag = np.abs(self.a_phi(s))
        i = int(np.argmax(mag))
        if i == 0 or i == len(s) - 1:
            return float(mag[i])
        res = minimize_scalar(
            lambda u: -abs(self.a_phi(float(u))),
            bracket=(s[i - 1], s[i], s[i + 1]),
            method="golden",
        )
        return max(float(mag[i]), float(-res.fun))

    def escape_speed(self) -> float:
        """Minimum launch speed from the center that crosses the boundary.

        Equals |q| A_max / m: the potential acts as a momentum barrier even
        though the magnetic force does no work.
        """
        return abs(self.q) * self.a_max() / self.m

    def bounding_radius(self, v0: float):
        """Radius of the circle confining motion launched at speed v0.

        Smallest s > 0 with v0 = |q| |A(s)| / m.  Returns None when v0
        exceeds the escape speed (the motion is unbounded).
        """
        if v0 < 0:
            raise ValueError("launch speed v0 must be non-negative")
        if v0 == 0.0:
            return 0.0
        if v0 > self.escape_speed():
            return None
        s = np.linspace(0.0, self.R, 10_001)
        g = abs(self.q) * np.abs(self.a_phi(s)) / self.m - v0
        idx = np.nonzero(g >= 0.0)[0]
        if len(idx) == 0:
            return None
        i = int(idx[0])
        if g[i] == 0.0 or i == 0:
            return float(s[i])
        f = lambda u: abs(self.q) * abs(self.a_phi(float(u))) / self.m - v0
        return float(brentq(f, s[i - 1], s[i], xtol=1e-14))


@dataclass(frozen=True)
class LinearFluxFreeField(RadialField):
    """The simplest flux-free profile: B_z falls linearly through zero.

    B_z(s) = B0 (1 - 3s/(2R)) inside the disk, zero outside, which
    integrates to zero net flux.  The matching potential
    A(s) = (B0 s / 2)(1 - s/R) vanishes at both s = 0 and s = R and peaks
    at s = R/2 with magnitude |B0| R / 8, so the escape speed and bounding
    radius are available in closed form.
    """

    def bz(self, s):
        s = _check_radius(s)
        if isinstance(s, np.ndarray):
            return np.where(s <= self.R, self.B0 * (1.0 - 1.5 * s / self.R), 0.0)
        if s <= self.R:
            return self.B0 * (1.0 - 1.5 * s / self.R)
        return 0.0

    def a_phi(self, s):
        s = _check_radius(s)
        if isinstance(s, np.ndarray):
            return np.where(s <= self.R, 0.5 * self.B0 * s * (1.0 - s / self.R), 0.0)
        if s <= self.R:
            return 0.5 * self.B0 * s * (1.0 - s / self.R)
        return 0.0

    def a_max(self) -> float:
        return abs(self.B0) * self.R / 8.0

    def bounding_radius(self, v0: float):
        if v0 < 0:
            raise ValueError("launch speed v0 must be non-negative")
        if self.B0 == 0.0:
            return 0.0 if v0 == 0.0 else None
        # v0 = |q| A(s)/m is quadratic in s; keep the smaller root.
        disc = 1.0 - 8.0 * self.m * v0 / (abs(self.q) * abs(self.B0) * self.R)
        if disc < 0.0:
            return None
        return 0.5 * self.R * (1.0 - np.sqrt(disc))


@dataclass(frozen=True)
class UniformField(RadialField):
    """Constant field B_z = B0 everywhere, symmetric-gauge A(s) = B0 s / 2.

    Not flux-free; used as a closed-form oracle (cyclotron circles of
    radius m v / (|q| |B0|)).  R is kept only as a diagnostic radius.
    """

    def bz(self, s):
        s = _check_radius(s)
        if isinstance(s, np.ndarray):
            return np.full_like(s, self.B0, dtype=float)
        return self.B0

    def a_phi(self, s):
        s = _check_radius(s)
        return 0.5 * self.B0 * s
