"""Declarative run descriptions, their flat key-value format, and the runner.

A scenario file is a plain UTF-8 document of ``key = value`` lines with
``#`` comments.  Keys are dotted paths grouped by section::

    mode = quantum                # classical | quantum | compare
    field.B0 = 1.0                # field scale (classical engine)
    field.R = 1.0                 # field region radius (classical engine)
    field.q = 1.0                 # particle charge
    field.m = 1.0                 # particle mass
    field.profile = linear        # linear | uniform
    classical.v0 = 0.06, 0.1, 0.2 # launch speeds, comma separated
    classical.h = 0.001           # RK4 step
    classical.t_max = 200.0       # time horizon for the trapped verdict
    quantum.N = 200               # grid points per axis
    quantum.L = 10.0              # half width of the square domain
    quantum.dt = 0.01             # Crank-Nicolson step
    quantum.steps = 60            # number of steps
    quantum.a = 1.0               # initial Gaussian sharpness
    quantum.p = 4.0               # initial mean momentum along x
    quantum.alpha = 5.0           # vector-potential strength
    quantum.R = 2.0               # field region radius on the grid
    output.stride = 1             # record/emit every k-th sample
    output.dump_states = false    # also write the final wavefunction

Unset keys take the defaults above.  Runs are deterministic: the same
scenario always produces byte-identical CSV output.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from typing import Dict, Optional, Tuple

import numpy as np

from . import classical, observables
from .fields import LinearFluxFreeField, RadialField, UniformField
from .quantum import Grid, SolverConfig, build_hamiltonian, evolve

__all__ = [
    "Scenario",
    "ScenarioError",
    "parse_scenario",
    "serialize_scenario",
    "load_scenario",
    "preset",
    "PRESET_NAMES",
    "run_scenario",
]

MODES = ("classical", "quantum", "compare")
PROFILES = ("linear", "uniform")


class ScenarioError(ValueError):
    """Malformed or out-of-range scenario input."""


@dataclass(frozen=True)
class Scenario:
    mode: str = "quantum"
    b0: float = 1.0
    field_radius: float = 1.0
    charge: float = 1.0
    mass: float = 1.0
    profile: str = "linear"
    v0: Tuple[float, ...] = (0.06, 0.1, 0.2)
    h: float = 1e-3
    t_max: float = 200.0
    n: int = 200
    half_width: float = 10.0
    dt: float = 0.01
    steps: int = 60
    a: float = 1.0
    p: float = 4.0
    alpha: float = 5.0
    region_radius: float = 2.0
    stride: int = 1
    dump_states: bool = False


def _as_float(key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ScenarioError(f"key '{key}': expected a number, got '{raw}'") from None


def _as_int(key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ScenarioError(f"key '{key}': expected an integer, got '{raw}'") from None


def _as_bool(key: str, raw: str) -> bool:
    low = raw.lower()
    if low in ("true", "false"):
        return low == "true"
    raise ScenarioError(f"key '{key}': expected true or false, got '{raw}'")


def _as_float_list(key: str, raw: str) -> Tuple[float, ...]:
    parts = [p.strip() for p in raw.split(",") if p.strip()]
    if not parts:
        raise ScenarioError(f"key '{key}': expected at least one number")
    return tuple(_as_float(key, p) for p in parts)


def _as_str(key: str, raw: str) -> str:
    return raw


_KEYMAP = {
    "mode": ("mode", _as_str),
    "field.B0": ("b0", _as_float),
    "field.R": ("field_radius", _as_float),
    "field.q": ("charge", _as_float),
    "field.m": ("mass", _as_float),
    "field.profile": ("profile", _as_str),
    "classical.v0": ("v0", _as_float_list),
    "classical.h": ("h", _as_float),
    "classical.t_max": ("t_max", _as_float),
    "quantum.N": ("n", _as_int),
    "quantum.L": ("half_width", _as_float),
    "quantum.dt": ("dt", _as_float),
    "quantum.steps": ("steps", _as_int),
    "quantum.a": ("a", _as_float),
    "quantum.p": ("p", _as_float),
    "quantum.alpha": ("alpha", _as_float),
    "quantum.R": ("region_radius", _as_float),
    "output.stride": ("stride", _as_int),
    "output.dump_states": ("dump_states", _as_bool),
}

_ATTR_TO_KEY = {attr: key for key, (attr, _) in _KEYMAP.items()}


def _validate(s: Scenario) -> Scenario:
    def bad(key: str, why: str):
        raise ScenarioError(f"key '{key}': {why}")

    if s.mode not in MODES:
        bad("mode", f"must be one of {', '.join(MODES)}")
    if s.profile not in PROFILES:
        bad("field.profile", f"must be one of {', '.join(PROFILES)}")
    if s.field_radius <= 0:
        bad("field.R", "must be positive")
    if s.mass <= 0:
        bad("field.m", "must be positive")
    for v in s.v0:
        if v < 0:
            bad("classical.v0", "speeds must be non-negative")
    if s.h <= 0:
        bad("classical.h", "must be positive")
    if s.t_max <= 0:
        bad("classical.t_max", "must be positive")
    if s.n < 8:
        bad("quantum.N", "must be at least 8")
    if s.half_width <= 0:
        bad("quantum.L", "must be positive")
    if s.dt <= 0:
        bad("quantum.dt", "must be positive")
    if s.steps < 1:
        bad("quantum.steps", "must be at least 1")
    if s.a <= 0:
        bad("quantum.a", "must be positive")
    if s.alpha < 0:
        bad("quantum.alpha", "must be non-negative")
    if s.region_radius <= 0:
        bad("quantum.R", "must be positive")
    if s.stride < 1:
        bad("output.stride", "must be at least 1")
    if s.mode in ("quantum", "compare") and s.steps % s.stride != 0:
        bad("output.stride", "quantum.steps must be a multiple of output.stride")
    return s


def parse_scenario(text: str) -> Scenario:
    """Parse and validate a scenario document.

    Errors name the offending key path.
    """
    values: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioError(f"line {lineno}: expected 'key = value', got '{line}'")
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key not in _KEYMAP:
            raise ScenarioError(f"line {lineno}: unknown key '{key}'")
        if key in values:
            raise ScenarioError(f"line {lineno}: duplicate key '{key}'")
        if not val:
            raise ScenarioError(f"key '{key}': empty value")
        values[key] = val

    if "mode" not in values:
        raise ScenarioError("missing required key 'mode'")

    kwargs = {}
    for key, raw in values.items():
        attr, conv = _KEYMAP[key]
        kwargs[attr] = conv(key, raw)
    return _validate(Scenario(**kwargs))


def serialize_scenario(s: Scenario) -> str:
    """Render a scenario back to its key-value document form."""
    lines = []
    for key, (attr, conv) in _KEYMAP.items():
        value = getattr(s, attr)
        if conv is _as_float_list:
            rendered = ", ".join(repr(float(v)) for v in value)
        elif conv is _as_bool:
            rendered = "true" if value else "false"
        elif conv is _as_float:
            rendered = repr(float(value))
        else:
            rendered = str(value)
        lines.append(f"{key} = {rendered}")
    return "\n".join(lines) + "\n"


def load_scenario(path: str) -> Scenario:
    with open(path, "r", encoding="utf-8") as f:
        return parse_scenario(f.read())


_PRESETS = {
    # Classical: two bound launches with their bounding circles plus one escape.
    "fig1": Scenario(mode="classical", v0=(0.06, 0.1, 0.2), t_max=40.0, stride=10),
    # Wavepacket escape through the field region.
    "fig2": Scenario(mode="quantum", alpha=5.0, steps=60),
    # Effective-force comparison for the escape run.
    "fig3": Scenario(mode="quantum", alpha=5.0, steps=60),
    # Trapped wavepacket behind a stronger barrier.
    "fig4": Scenario(mode="quantum", alpha=40.0, steps=75),
    # Effective-force comparison for the trapped run.
    "fig5": Scenario(mode="quantum", alpha=40.0, steps=75),
}

PRESET_NAMES = tuple(sorted(_PRESETS))


def preset(name: str) -> Scenario:
    """Named preset scenarios reproducing the reference runs."""
    try:
        return _PRESETS[name]
    except KeyError:
        raise ScenarioError(
            f"unknown preset '{name}'; choose from {', '.join(PRESET_NAMES)}"
        ) from None


# ---------------------------------------------------------------------------
# Running and serialization of results
# ---------------------------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if value is None:
        return "none"
    if isinstance(value, str):
        return value
    return repr(float(value))


def _write_csv(path: str, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(_fmt(v) for v in row) + "\n")


def _classical_field(s: Scenario) -> RadialField:
    cls = LinearFluxFreeField if s.profile == "linear" else UniformField
    return cls(B0=s.b0, R=s.field_radius, q=s.charge, m=s.mass)


def _quantum_field(s: Scenario) -> RadialField:
    cls = LinearFluxFreeField if s.profile == "linear" else UniformField
    return cls(B0=1.0, R=s.region_radius, q=1.0, m=1.0)


def _run_classical(s: Scenario, out_dir: str, stride: int, summary: dict, quiet: bool):
    field = _classical_field(s)
    for i, v0 in enumerate(s.v0, 1):
        result = classical.run_trajectory(field, v0, h=s.h, t_max=s.t_max)
        rows = []
        last = len(result.t) - 1
        for k in range(0, last + 1, stride):
            rows.append((result.t[k], result.xy[k, 0], result.xy[k, 1],
                         result.v[k, 0], result.v[k, 1]))
        if last % stride != 0:
            rows.append((result.t[last], result.xy[last, 0], result.xy[last, 1],
                         result.v[last, 0], result.v[last, 1]))
        path = os.path.join(out_dir, f"trajectory_{i:02d}.csv")
        _write_csv(path, ("t", "x", "y", "vx", "vy"), rows)
        if not quiet:
            print(f"wrote {path}")

        tag = f"classical.{i}"
        summary[f"{tag}.v0"] = v0
        summary[f"{tag}.outcome"] = result.outcome
        summary[f"{tag}.max_radius"] = result.max_radius
        summary[f"{tag}.bounding_radius"] = field.bounding_radius(v0)
        if result.outcome == classical.ESCAPED:
            summary[f"{tag}.exit_angle"] = classical.exit_angle(result)
            summary[f"{tag}.exit_time"] = result.exit_state.t


def _run_quantum(s: Scenario, out_dir: str, stride: int, summary: dict, quiet: bool):
    grid = Grid(n=s.n, half_width=s.half_width)
    config = SolverConfig(
        dt=s.dt, steps=s.steps, alpha=s.alpha, a=s.a, p=s.p,
        region_radius=s.region_radius, stride=stride,
    )
    field = _quantum_field(s)
    states = evolve(config, grid, field)
    ham = build_hamiltonian(grid, field, s.alpha)
    series = observables.compute_series(
        states, grid, ham, field, s.alpha, s.dt * stride, s.region_radius
    )

    rows = [
        (
            st.t_index, series.t[i],
            series.position[i, 0], series.position[i, 1],
            series.momentum[i, 0], series.momentum[i, 1],
            series.velocity[i, 0], series.velocity[i, 1],
            series.speed[i], series.energy[i], series.norm[i],
            series.prob_in_region[i],
        )
        for i, st in enumerate(states)
    ]
    obs_path = os.path.join(out_dir, "observables.csv")
    _write_csv(
        obs_path,
        ("step", "t", "x", "y", "px", "py", "vx", "vy",
         "speed", "energy", "norm", "prob_in_region"),
        rows,
    )

    force_rows = [
        (
            states[i].t_index, series.t[i],
            series.force_lhs[i, 0], series.force_lhs[i, 1],
            series.force_ehrenfest[i, 0], series.force_ehrenfest[i, 1],
            series.force_mean_lorentz[i, 0], series.force_mean_lorentz[i, 1],
        )
        for i in range(1, len(states) - 1)
    ]
    force_path = os.path.join(out_dir, "forces.csv")
    _write_csv(
        force_path,
        ("step", "t", "f_lhs_x", "f_lhs_y", "f_ehrenfest_x", "f_ehrenfest_y",
         "f_mean_lorentz_x", "f_mean_lorentz_y"),
        force_rows,
    )
    if not quiet:
        print(f"wrote {obs_path}")
        print(f"wrote {force_path}")

    if s.dump_states:
        X, Y = grid.flat_xy
        amps = states[-1].amps
        jj = np.arange(grid.size) % grid.n + 1
        kk = np.arange(grid.size) // grid.n + 1
        gg = (kk - 1) * grid.n + jj
        dump_rows = [
            (int(gg[i]), int(jj[i]), int(kk[i]), X[i], Y[i],
             amps[i].real, amps[i].imag)
            for i in range(grid.size)
        ]
        dump_path = os.path.join(out_dir, "state_final.csv")
        _write_csv(dump_path, ("index", "j", "k", "x", "y", "re", "im"), dump_rows)
        if not quiet:
            print(f"wrote {dump_path}")

    summary["quantum.norm_drift"] = float(series.norm.max() - series.norm.min())
    summary["quantum.energy_drift"] = float(series.energy.max() - series.energy.min())
    interior = series.speed[1:-1]
    summary["quantum.speed_variation"] = float(
        (interior.max() - interior.min()) / interior.mean()
    )
    diff_e = series.force_lhs[1:-1] - series.force_ehrenfest[1:-1]
    diff_l = series.force_lhs[1:-1] - series.force_mean_lorentz[1:-1]
    summary["quantum.rms_force_ehrenfest"] = float(
        np.sqrt(np.mean(np.sum(diff_e**2, axis=1)))
    )
    summary["quantum.rms_force_mean_lorentz"] = float(
        np.sqrt(np.mean(np.sum(diff_l**2, axis=1)))
    )
    try:
        i, f = observables.exit_crossing(series, s.region_radius)
        summary["quantum.outcome"] = "escaped"
        summary["quantum.exit_step"] = float((i + f) * stride)
        summary["quantum.exit_angle"] = observables.exit_angle_to_tangent(
            series, s.region_radius
        )
    except ValueError:
        summary["quantum.outcome"] = "trapped"


def run_scenario(
    s: Scenario,
    out_dir: str,
    stride: Optional[int] = None,
    quiet: bool = False,
) -> dict:
    """Execute a scenario and write its CSV outputs plus a summary document.

    Returns the summary as a dict; the same content lands in
    ``summary.txt`` as ``key = value`` lines.  Output is deterministic for
    identical inputs.
    """
    if stride is not None:
        s = _validate(replace(s, stride=stride))
    os.makedirs(out_dir, exist_ok=True)
    summary: dict = {"mode": s.mode}
    if s.mode in ("classical", "compare"):
        _run_classical(s, out_dir, s.stride, summary, quiet)
    if s.mode in ("quantum", "compare"):
        _run_quantum(s, out_dir, s.stride, summary, quiet)

    path = os.path.join(out_dir, "summary.txt")
    with open(path, "w", encoding="utf-8") as f:
        for key in sorted(summary):
            f.write(f"{key} = {_fmt(summary[key])}\n")
    if not quiet:
        print(f"wrote {path}")
    return summary
