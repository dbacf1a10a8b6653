"""Expectation values and diagnostic series for evolved wavepackets.

All spatial integrals are box sums (spacing^2 times a node sum) and all
spatial derivatives are centered differences with the zero frame outside
the interior, matching the solver's own discretization so the diagnostics
are self-consistent with the dynamics.

Two competing effective forces are computed for the mean-position path:
the full expectation-value force (``ehrenfest_force``, mixing the momentum
and the field inside one expectation) and the naive Lorentz force
evaluated at the mean velocity and mean position (``mean_lorentz_force``).
For a non-uniform field only the former tracks the measured second time
derivative of the mean position.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .fields import RadialField
from .quantum import DiscreteHamiltonian, Grid, WaveState

__all__ = [
    "ObservableSeries",
    "total_probability",
    "expect_position",
    "expect_momentum",
    "expect_energy",
    "prob_within_radius",
    "velocity_series",
    "accel_series",
    "ehrenfest_force",
    "mean_lorentz_force",
    "exit_crossing",
    "exit_angle_to_tangent",
    "compute_series",
]


def _diff_x(grid: Grid, amps: np.ndarray) -> np.ndarray:
    """Centered x difference with the zero frame beyond the interior."""
    g = grid.as_mesh(amps)
    out = np.zeros_like(g)
    out[:, 1:-1] = g[:, 2:] - g[:, :-2]
    out[:, 0] = g[:, 1]
    out[:, -1] = -g[:, -2]
    return out.ravel() / (2.0 * grid.spacing)


def _diff_y(grid: Grid, amps: np.ndarray) -> np.ndarray:
    g = grid.as_mesh(amps)
    out = np.zeros_like(g)
    out[1:-1, :] = g[2:, :] - g[:-2, :]
    out[0, :] = g[1, :]
    out[-1, :] = -g[-2, :]
    return out.ravel() / (2.0 * grid.spacing)


def total_probability(psi: WaveState, grid: Grid) -> float:
    """Discrete norm squared: spacing^2 * sum |psi|^2."""
    return grid.spacing**2 * np.vdot(psi.amps, psi.amps).real


def expect_position(psi: WaveState, grid: Grid) -> np.ndarray:
    """Mean position (x, y), normalized by the discrete norm squared."""
    X, Y = grid.flat_xy
    rho = np.abs(psi.amps) ** 2
    w = rho.sum()
    return np.array([np.dot(X, rho), np.dot(Y, rho)]) / w


def expect_momentum(psi: WaveState, grid: Grid) -> np.ndarray:
    """Mean momentum from the centered-difference gradient."""
    d2 = grid.spacing**2
    px = d2 * np.vdot(psi.amps, -1j * _diff_x(grid, psi.amps)).real
    py = d2 * np.vdot(psi.amps, -1j * _diff_y(grid, psi.amps)).real
    return np.array([px, py])


def expect_energy(psi: WaveState, ham: DiscreteHamiltonian, grid: Grid) -> float:
    """Mean energy of the state.

    The stored matrix generates the evolution as i d psi/dt = -H psi, so
    the physical energy operator is its negative; the sign here makes the
    field-free Gaussian's kinetic energy positive.
    """
    return -(grid.spacing**2) * np.vdot(psi.amps, ham.apply(psi.amps)).real


def prob_within_radius(psi: WaveState, grid: Grid, radius: float) -> float:
    """Probability mass on nodes with x^2 + y^2 <= radius^2."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    X, Y = grid.flat_xy
    inside = X**2 + Y**2 <= radius**2
    return grid.spacing**2 * float(np.sum(np.abs(psi.amps[inside]) ** 2))


def velocity_series(xs: np.ndarray, dt: float) -> np.ndarray:
    """First time derivative of a sampled path, centered on the interior.

    Endpoints use one-sided differences and carry lower accuracy.
    """
    xs = np.asarray(xs, dtype=float)
    if len(xs) < 3:
        raise ValueError("need at least 3 samples to differentiate")
    return np.gradient(xs, dt, axis=0)


def accel_series(xs: np.ndarray, dt: float) -> np.ndarray:
    """Second time derivative of a sampled path.

    Centered second differences on the interior; the first and last samples
    reuse the adjacent interior value of the second difference (one-sided,
    lower accuracy; exclude them from quantitative comparisons).
    """
    xs = np.asarray(xs, dtype=float)
    if len(xs) < 3:
        raise ValueError("need at least 3 samples to differentiate twice")
    out = np.empty_like(xs)
    out[1:-1] = (xs[2:] - 2.0 * xs[1:-1] + xs[:-2]) / dt**2
    out[0] = out[1]
    out[-1] = out[-2]
    return out


def ehrenfest_force(
    psi: WaveState, grid: Grid, field: RadialField, alpha: float
) -> np.ndarray:
    """Expectation-value force driving the mean position.

    (alpha/2) <p x B - B x p> - alpha^2 <A x B> restricted to the plane,
    with the momentum applied by centered differences to both psi and
    B psi (the same symmetrization the Hamiltonian uses) and the potential
    term a pointwise box sum along the outward radial direction.
    """
    d2 = grid.spacing**2
    X, Y = grid.flat_xy
    s = np.hypot(X, Y)
    b = field.bz(s)
    a_s = field.a_phi(s)
    amps = psi.amps

    py_sym = d2 * np.vdot(
        amps, -1j * _diff_y(grid, b * amps) + b * (-1j * _diff_y(grid, amps))
    ).real
    px_sym = d2 * np.vdot(
        amps, -1j * _diff_x(grid, b * amps) + b * (-1j * _diff_x(grid, amps))
    ).real

    rho = np.abs(amps) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        shat_x = np.where(s > 0, X / s, 0.0)
        shat_y = np.where(s > 0, Y / s, 0.0)
    axb_x = d2 * np.dot(rho, a_s * b * shat_x)
    axb_y = d2 * np.dot(rho, a_s * b * shat_y)

    return np.array(
        [
            0.5 * alpha * py_sym - alpha**2 * axb_x,
            -0.5 * alpha * px_sym - alpha**2 * axb_y,
        ]
    )


def mean_lorentz_force(
    v_mean: np.ndarray, x_mean: np.ndarray, field: RadialField, alpha: float
) -> np.ndarray:
    """Naive force alpha <v> x B(<x>): the field sampled at the mean position."""
    s = float(np.hypot(x_mean[0], x_mean[1]))
    b = field.bz(s)
    return alpha * b * np.array([v_mean[1], -v_mean[0]])


@dataclass
class ObservableSeries:
    """Per-snapshot diagnostics of one evolution, sharing one time base.

    Forces: ``force_lhs`` is the measured second derivative of the mean
    position, ``force_ehrenfest`` the expectation-value force, and
    ``force_mean_lorentz`` the naive mean-velocity Lorentz force.  The
    first and last rows of the differentiated series are one-sided.
    """

    t: np.ndarray
    position: np.ndarray
    momentum: np.ndarray
    velocity: np.ndarray
    speed: np.ndarray
    energy: np.ndarray
    norm: np.ndarray
    prob_in_region: np.ndarray
    force_lhs: np.ndarray
    force_ehrenfest: np.ndarray
    force_mean_lorentz: np.ndarray

    def __len__(self) -> int:
        return len(self.t)


def compute_series(
    states: Sequence[WaveState],
    grid: Grid,
    ham: DiscreteHamiltonian,
    field: RadialField,
    alpha: float,
    dt: float,
    region_radius: float,
) -> ObservableSeries:
    """Evaluate the full diagnostic set on a recorded evolution.

    ``dt`` is the time between recorded snapshots (solver step times the
    recording stride).
    """
    n = len(states)
    if n < 3:
        raise ValueError("need at least 3 snapshots for the derivative series")
    t = dt * np.arange(n)
    position = np.array([expect_position(s, grid) for s in states])
    momentum = np.array([expect_momentum(s, grid) for s in states])
    energy = np.array([expect_energy(s, ham, grid) for s in states])
    norm = np.array([total_probability(s, grid) for s in states])
    prob_in = np.array([prob_within_radius(s, grid, region_radius) for s in states])
    f_ehr = np.array([ehrenfest_force(s, grid, field, alpha) for s in states])

    velocity = velocity_series(position, dt)
    speed = np.hypot(velocity[:, 0], velocity[:, 1])
    f_lhs = accel_series(position, dt)
    f_lor = np.array(
        [
            mean_lorentz_force(velocity[i], position[i], field, alpha)
            for i in range(n)
        ]
    )
    return ObservableSeries(
        t=t,
        position=position,
        momentum=momentum,
        velocity=velocity,
        speed=speed,
        energy=energy,
        norm=norm,
        prob_in_region=prob_in,
        force_lhs=f_lhs,
        force_ehrenfest=f_ehr,
        force_mean_lorentz=f_lor,
    )


def exit_crossing(series: ObservableSeries, radius: float) -> Tuple[int, float]:
    """First crossing of the mean-position path out of the given radius.

    Returns (i, f): the crossing lies between snapshots i and i+1 at
    interpolation fraction f.  Raises ValueError when the path never
    leaves the region.
    """
    r = np.hypot(series.position[:, 0], series.position[:, 1])
    outside = np.nonzero(r > radius)[0]
    if len(outside) == 0 or outside[0] == 0:
        raise ValueError("mean position never crosses the region boundary")
    i = int(outside[0]) - 1
    f = (radius - r[i]) / (r[i + 1] - r[i])
    return i, float(f)


def exit_angle_to_tangent(series: ObservableSeries, radius: float) -> float:
    """Angle between the mean velocity at exit and the local tangent.

    The crossing of the mean-position path is located by linear
    interpolation between the straddling snapshots.  A perpendicular
    (radial) exit gives pi/2.
    """
    i, f = exit_crossing(series, radius)
    xc = series.position[i] + f * (series.position[i + 1] - series.position[i])
    vc = series.velocity[i] + f * (series.velocity[i + 1] - series.velocity[i])
    rc = np.hypot(xc[0], xc[1])
    tangent = np.array([-xc[1], xc[0]]) / rc
    cosang = float(np.dot(vc, tangent) / np.hypot(vc[0], vc[1]))
    return float(np.arccos(np.clip(cosang, -1.0, 1.0)))
