"""Planar Lorentz-force trajectories integrated with fixed-step RK4.

The particle starts at the center of the field region with speed v0 along
x-hat.  Magnetic forces do no work, so the speed is a constant of the
motion; together with conservation of canonical angular momentum this
confines sub-threshold launches to a circle whose radius the field model
predicts (see :meth:`fluxfree.fields.RadialField.bounding_radius`).
Integration is Cartesian to avoid the polar coordinate singularity at the
launch point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .fields import RadialField

__all__ = [
    "ParticleState",
    "TrajectoryResult",
    "lorentz_accel",
    "rk4_step",
    "run_trajectory",
    "exit_angle",
]

ESCAPED = "escaped"
TRAPPED = "trapped"


@dataclass(frozen=True)
class ParticleState:
    """Phase-space point (position, velocity, time) in the plane."""

    x: float
    y: float
    vx: float
    vy: float
    t: float = 0.0

    @property
    def radius(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def speed(self) -> float:
        return math.hypot(self.vx, self.vy)


@dataclass
class TrajectoryResult:
    """Sampled trajectory plus its classification.

    ``t``, ``xy``, ``v`` hold the per-step samples (shapes (n,), (n, 2),
    (n, 2)).  ``outcome`` is ``"escaped"`` when the path crossed the field
    boundary, in which case ``exit_state`` is the state landed exactly on
    the boundary circle; otherwise ``"trapped"``, meaning the run reached
    its time horizon inside the region.  ``max_radius`` is the largest
    sampled distance from the center.
    """

    t: np.ndarray
    xy: np.ndarray
    v: np.ndarray
    outcome: str
    steps_taken: int
    max_radius: float
    exit_state: Optional[ParticleState] = None

    @property
    def radii(self) -> np.ndarray:
        return np.hypot(self.xy[:, 0], self.xy[:, 1])

    @property
    def speeds(self) -> np.ndarray:
        return np.hypot(self.v[:, 0], self.v[:, 1])


def _accel(field: RadialField, x: float, y: float, vx: float, vy: float):
    # (q/m) v x B with B = B_z(s) z-hat
    c = field.q / field.m * field.bz(math.hypot(x, y))
    return c * vy, -c * vx


def _rk4(field: RadialField, x, y, vx, vy, h):
    ax1, ay1 = _accel(field, x, y, vx, vy)
    x2 = x + 0.5 * h * vx
    y2 = y + 0.5 * h * vy
    vx2 = vx + 0.5 * h * ax1
    vy2 = vy + 0.5 * h * ay1
    ax2, ay2 = _accel(field, x2, y2, vx2, vy2)
    x3 = x + 0.5 * h * vx2
    y3 = y + 0.5 * h * vy2
    vx3 = vx + 0.5 * h * ax2
    vy3 = vy + 0.5 * h * ay2
    ax3, ay3 = _accel(field, x3, y3, vx3, vy3)
    x4 = x + h * vx3
    y4 = y + h * vy3
    vx4 = vx + h * ax3
    vy4 = vy + h * ay3
    ax4, ay4 = _accel(field, x4, y4, vx4, vy4)
    xn = x + h / 6.0 * (vx + 2.0 * vx2 + 2.0 * vx3 + vx4)
    yn = y + h / 6.0 * (vy + 2.0 * vy2 + 2.0 * vy3 + vy4)
    vxn = vx + h / 6.0 * (ax1 + 2.0 * ax2 + 2.0 * ax3 + ax4)
    vyn = vy + h / 6.0 * (ay1 + 2.0 * ay2 + 2.0 * ay3 + ay4)
    return xn, yn, vxn, vyn


class _OneSidedField:
    """Evaluate the field with the radius clamped to one side of s = R.

    The profile is discontinuous at the boundary, so an RK4 step whose
    stages straddle it loses accuracy.  Exit handling therefore splits the
    crossing step at the boundary and integrates each part against the
    one-sided field limit, which is smooth along that part of the path.
    """

    def __init__(self, field: RadialField, inside: bool):
        self._field = field
        self._inside = inside
        self._outer = math.nextafter(field.R, math.inf)
        self.q = field.q
        self.m = field.m
        self.R = field.R

    def bz(self, s):
        if self._inside:
            return self._field.bz(s if s <= self.R else self.R)
        return self._field.bz(s if s >= self._outer else self._outer)


def _land_on_boundary(field: RadialField, x, y, vx, vy, h):
    """Largest sub-step in (0, h] whose RK4 update lands on the circle s = R.

    Assumes the full step of size h ends outside.  Bisection on the
    sub-step length against the inside-clamped field; 60 halvings put the
    landing radius within round-off of R.
    """
    inside = _OneSidedField(field, inside=True)
    lo, hi = 0.0, h
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        px, py, _, _ = _rk4(inside, x, y, vx, vy, mid)
        if px * px + py * py >= field.R * field.R:
            hi = mid
        else:
            lo = mid
    return hi, _rk4(inside, x, y, vx, vy, hi)


def lorentz_accel(field: RadialField, state: ParticleState):
    """Acceleration (q/m) B_z(s) (vy, -vx) at the given state."""
    return _accel(field, state.x, state.y, state.vx, state.vy)


def rk4_step(field: RadialField, state: ParticleState, h: float) -> ParticleState:
    """One classical fourth-order Runge-Kutta step of size h."""
    if h <= 0:
        raise ValueError("step size h must be positive")
    x, y, vx, vy = _rk4(field, state.x, state.y, state.vx, state.vy, h)
    return ParticleState(x, y, vx, vy, state.t + h)


def run_trajectory(
    field: RadialField,
    v0: float,
    h: float = 1e-3,
    t_max: float = 200.0,
) -> TrajectoryResult:
    """Integrate from the center with initial velocity v0 x-hat.

    Steps until the sampled radius exceeds the field radius R (escaped) or
    until t_max is reached (trapped; the classification is horizon-limited,
    no boundedness proof is attempted).  The defaults resolve the cyclotron
    time 2 pi m / (q B0) by several thousand steps at unit parameters.
    """
    if h <= 0:
        raise ValueError("step size h must be positive")
    if t_max <= 0:
        raise ValueError("time horizon t_max must be positive")
    if v0 < 0:
        raise ValueError("launch speed v0 must be non-negative")

    R = field.R
    x = y = 0.0
    vx, vy = float(v0), 0.0
    ts = [0.0]
    xs = [0.0]
    ys = [0.0]
    vxs = [vx]
    vys = [vy]

    n_steps = int(math.ceil(t_max / h - 1e-12))
    escaped = False
    steps = 0
    exit_state = None
    for i in range(1, n_steps + 1):
        xn, yn, vxn, vyn = _rk4(field, x, y, vx, vy, h)
        if xn * xn + yn * yn > R * R:
            # Split the crossing step at the boundary so that no RK4 stage
            # sees the field discontinuity: land exactly on s = R against
            # the inside field, then finish the step against the outside
            # field (for the flux-free profiles that part is free drift).
            tau, (bx, by, bvx, bvy) = _land_on_boundary(field, x, y, vx, vy, h)
            exit_state = ParticleState(bx, by, bvx, bvy, (i - 1) * h + tau)
            outside = _OneSidedField(field, inside=False)
            xn, yn, vxn, vyn = _rk4(outside, bx, by, bvx, bvy, h - tau)
            escaped = True
        x, y, vx, vy = xn, yn, vxn, vyn
        ts.append(i * h)
        xs.append(x)
        ys.append(y)
        vxs.append(vx)
        vys.append(vy)
        steps = i
        if escaped:
            break

    t_arr = np.array(ts)
    xy = np.column_stack([xs, ys])
    v = np.column_stack([vxs, vys])
    radii = np.hypot(xy[:, 0], xy[:, 1])
    max_radius = float(radii.max())

    return TrajectoryResult(
        t=t_arr,
        xy=xy,
        v=v,
        outcome=ESCAPED if escaped else TRAPPED,
        steps_taken=steps,
        max_radius=max_radius,
        exit_state=exit_state,
    )


def exit_angle(result: TrajectoryResult) -> float:
    """Signed angle between the exit velocity and the outward radial direction.

    Zero means the particle left the region perpendicular to the boundary.
    Raises ValueError for trajectories that did not escape.
    """
    if result.outcome != ESCAPED or result.exit_state is None:
        raise ValueError("exit_angle requires an escaped trajectory")
    st = result.exit_state
    r = st.radius
    rx, ry = st.x / r, st.y / r
    return math.atan2(rx * st.vy - ry * st.vx, rx * st.vx + ry * st.vy)
