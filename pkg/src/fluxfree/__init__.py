"""Classical and quantum motion of a charged particle in a flux-free,
radially symmetric magnetic field region.

The field model fixes the gauge of the azimuthal vector potential, which
sets a sharp classical escape speed; trajectories are integrated with RK4
and wavepackets with a norm-preserving magnetic Crank-Nicolson scheme.
The observables layer compares the measured acceleration of the mean
position against two candidate effective forces.
"""

from .classical import (
    ESCAPED,
    TRAPPED,
    ParticleState,
    TrajectoryResult,
    exit_angle,
    lorentz_accel,
    rk4_step,
    run_trajectory,
)
from .fields import LinearFluxFreeField, RadialField, UniformField
from .observables import (
    ObservableSeries,
    accel_series,
    compute_series,
    ehrenfest_force,
    exit_angle_to_tangent,
    exit_crossing,
    expect_energy,
    expect_momentum,
    expect_position,
    mean_lorentz_force,
    prob_within_radius,
    total_probability,
    velocity_series,
)
from .quantum import (
    CrankNicolson,
    DiscreteHamiltonian,
    Grid,
    SolverConfig,
    SolverError,
    WaveState,
    build_hamiltonian,
    evolve,
    gaussian_packet,
)
from .scenario import (
    PRESET_NAMES,
    Scenario,
    ScenarioError,
    load_scenario,
    parse_scenario,
    preset,
    run_scenario,
    serialize_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "ESCAPED",
    "TRAPPED",
    "ParticleState",
    "TrajectoryResult",
    "exit_angle",
    "lorentz_accel",
    "rk4_step",
    "run_trajectory",
    "LinearFluxFreeField",
    "RadialField",
    "UniformField",
    "ObservableSeries",
    "accel_series",
    "compute_series",
    "ehrenfest_force",
    "exit_angle_to_tangent",
    "exit_crossing",
    "expect_energy",
    "expect_momentum",
    "expect_position",
    "mean_lorentz_force",
    "prob_within_radius",
    "total_probability",
    "velocity_series",
    "CrankNicolson",
    "DiscreteHamiltonian",
    "Grid",
    "SolverConfig",
    "SolverError",
    "WaveState",
    "build_hamiltonian",
    "evolve",
    "gaussian_packet",
    "PRESET_NAMES",
    "Scenario",
    "ScenarioError",
    "load_scenario",
    "parse_scenario",
    "preset",
    "run_scenario",
    "serialize_scenario",
    "__version__",
]
