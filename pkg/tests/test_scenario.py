"""Scenario parsing, serialization round trip, runner outputs, and the CLI."""

import subprocess
import sys

import numpy as np
import pytest

from fluxfree.cli import main
from fluxfree.scenario import (
    PRESET_NAMES,
    Scenario,
    ScenarioError,
    parse_scenario,
    preset,
    run_scenario,
    serialize_scenario,
)

SMALL_QUANTUM = """
mode = quantum
quantum.N = 32
quantum.L = 6.0
quantum.steps = 6
quantum.alpha = 5.0
"""

SMALL_CLASSICAL = """
mode = classical
classical.v0 = 0.06, 0.2
classical.t_max = 20.0
"""


# -- parsing ----------------------------------------------------------------


def test_parse_fills_reference_defaults():
    s = parse_scenario("mode = quantum\n")
    assert s.n == 200
    assert s.half_width == 10.0
    assert s.dt == 0.01
    assert s.p == 4.0
    assert s.a == 1.0
    assert s.region_radius == 2.0


def test_parse_trapped_scenario():
    s = parse_scenario("mode = quantum\nquantum.alpha = 40\nquantum.steps = 75\n")
    assert s.alpha == 40.0
    assert s.steps == 75


def test_parse_rejects_negative_dt():
    with pytest.raises(ScenarioError, match="quantum.dt"):
        parse_scenario("mode = quantum\nquantum.dt = -0.01\n")


def test_parse_rejects_unknown_key():
    with pytest.raises(ScenarioError, match="quantum.gamma"):
        parse_scenario("mode = quantum\nquantum.gamma = 1\n")


def test_parse_rejects_duplicate_key():
    with pytest.raises(ScenarioError, match="duplicate"):
        parse_scenario("mode = quantum\nquantum.N = 10\nquantum.N = 12\n")


def test_parse_requires_mode():
    with pytest.raises(ScenarioError, match="mode"):
        parse_scenario("quantum.N = 64\n")


def test_parse_rejects_bad_mode():
    with pytest.raises(ScenarioError, match="mode"):
        parse_scenario("mode = both\n")


def test_parse_rejects_malformed_line():
    with pytest.raises(ScenarioError, match="line 2"):
        parse_scenario("mode = quantum\nnonsense\n")


def test_parse_rejects_bad_types():
    with pytest.raises(ScenarioError, match="quantum.N"):
        parse_scenario("mode = quantum\nquantum.N = 12.5\n")
    with pytest.raises(ScenarioError, match="classical.v0"):
        parse_scenario("mode = classical\nclassical.v0 = fast\n")


def test_parse_ignores_comments_and_blanks():
    s = parse_scenario("# a comment\n\nmode = classical  # trailing\n")
    assert s.mode == "classical"


def test_parse_rejects_incompatible_stride():
    with pytest.raises(ScenarioError, match="output.stride"):
        parse_scenario("mode = quantum\nquantum.steps = 10\noutput.stride = 3\n")


def test_round_trip():
    for text in (SMALL_QUANTUM, SMALL_CLASSICAL, "mode = compare\n"):
        s = parse_scenario(text)
        assert parse_scenario(serialize_scenario(s)) == s


def test_round_trip_of_presets():
    for name in PRESET_NAMES:
        s = preset(name)
        assert parse_scenario(serialize_scenario(s)) == s


def test_presets():
    assert PRESET_NAMES == ("fig1", "fig2", "fig3", "fig4", "fig5")
    assert preset("fig1").mode == "classical"
    assert preset("fig2").alpha == 5.0
    assert preset("fig4").alpha == 40.0
    assert preset("fig4").steps == 75
    with pytest.raises(ScenarioError):
        preset("fig9")


# -- runner -----------------------------------------------------------------


def test_run_classical_outputs(tmp_path):
    s = parse_scenario(SMALL_CLASSICAL)
    summary = run_scenario(s, str(tmp_path), quiet=True)
    assert (tmp_path / "trajectory_01.csv").exists()
    assert (tmp_path / "trajectory_02.csv").exists()
    assert (tmp_path / "summary.txt").exists()
    assert summary["classical.1.outcome"] == "trapped"
    assert summary["classical.2.outcome"] == "escaped"
    assert summary["classical.1.bounding_radius"] == pytest.approx(0.13944, abs=1e-4)
    assert summary["classical.2.bounding_radius"] is None
    assert abs(summary["classical.2.exit_angle"]) < 0.01


def test_run_quantum_outputs(tmp_path):
    s = parse_scenario(SMALL_QUANTUM)
    summary = run_scenario(s, str(tmp_path), quiet=True)
    obs = (tmp_path / "observables.csv").read_text().splitlines()
    assert obs[0] == "step,t,x,y,px,py,vx,vy,speed,energy,norm,prob_in_region"
    assert len(obs) == 1 + 7
    forces = (tmp_path / "forces.csv").read_text().splitlines()
    assert forces[0].startswith("step,t,f_lhs_x")
    assert len(forces) == 1 + 5
    assert summary["quantum.norm_drift"] < 1e-10


def test_run_emits_paper_index_convention(tmp_path):
    s = parse_scenario(SMALL_QUANTUM + "output.dump_states = true\n")
    run_scenario(s, str(tmp_path), quiet=True)
    lines = (tmp_path / "state_final.csv").read_text().splitlines()
    assert lines[0] == "index,j,k,x,y,re,im"
    assert len(lines) == 1 + 32 * 32
    # vector position of node (j, k) is (k-1)N + j, 1-based
    first = lines[1].split(",")
    assert first[:3] == ["1", "1", "1"]
    row_n = lines[32].split(",")
    assert row_n[:3] == ["32", "32", "1"]
    wrap = lines[33].split(",")
    assert wrap[:3] == ["33", "1", "2"]


def test_run_is_deterministic(tmp_path):
    s = parse_scenario(SMALL_QUANTUM)
    d1 = tmp_path / "one"
    d2 = tmp_path / "two"
    run_scenario(s, str(d1), quiet=True)
    run_scenario(s, str(d2), quiet=True)
    for name in ("observables.csv", "forces.csv", "summary.txt"):
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes()


def test_summary_recomputable_from_csv(tmp_path):
    s = parse_scenario(SMALL_QUANTUM)
    summary = run_scenario(s, str(tmp_path), quiet=True)
    rows = [
        line.split(",")
        for line in (tmp_path / "observables.csv").read_text().splitlines()[1:]
    ]
    norm = np.array([float(r[10]) for r in rows])
    energy = np.array([float(r[9]) for r in rows])
    assert norm.max() - norm.min() == summary["quantum.norm_drift"]
    assert energy.max() - energy.min() == summary["quantum.energy_drift"]


def test_classical_csv_contains_full_resolution_at_unit_stride(tmp_path):
    s = parse_scenario("mode = classical\nclassical.v0 = 0.06\nclassical.t_max = 5.0\n")
    summary = run_scenario(s, str(tmp_path), quiet=True)
    rows = [
        line.split(",")
        for line in (tmp_path / "trajectory_01.csv").read_text().splitlines()[1:]
    ]
    assert len(rows) == 5001
    radii = np.hypot(
        np.array([float(r[1]) for r in rows]), np.array([float(r[2]) for r in rows])
    )
    assert float(radii.max()) == summary["classical.1.max_radius"]


def test_run_respects_stride_override(tmp_path):
    s = parse_scenario(SMALL_QUANTUM)
    run_scenario(s, str(tmp_path), stride=2, quiet=True)
    obs = (tmp_path / "observables.csv").read_text().splitlines()
    assert len(obs) == 1 + 4  # steps 0, 2, 4, 6


def test_compare_mode_runs_both(tmp_path):
    s = parse_scenario(
        "mode = compare\nclassical.v0 = 0.2\nclassical.t_max = 10.0\n"
        "quantum.N = 32\nquantum.L = 6.0\nquantum.steps = 4\n"
    )
    summary = run_scenario(s, str(tmp_path), quiet=True)
    assert (tmp_path / "trajectory_01.csv").exists()
    assert (tmp_path / "observables.csv").exists()
    assert "classical.1.outcome" in summary
    assert "quantum.norm_drift" in summary


# -- CLI --------------------------------------------------------------------


def test_cli_validate_ok(tmp_path, capsys):
    f = tmp_path / "run.cfg"
    f.write_text(SMALL_QUANTUM)
    assert main(["validate", str(f)]) == 0
    assert "valid" in capsys.readouterr().out


def test_cli_validate_bad_scenario(tmp_path, capsys):
    f = tmp_path / "run.cfg"
    f.write_text("mode = quantum\nquantum.dt = 0\n")
    assert main(["validate", str(f)]) == 1
    assert "quantum.dt" in capsys.readouterr().err


def test_cli_missing_file(capsys):
    assert main(["run", "/nonexistent/scenario.cfg"]) == 1


def test_cli_run(tmp_path, capsys):
    f = tmp_path / "run.cfg"
    f.write_text(SMALL_CLASSICAL)
    out = tmp_path / "out"
    assert main(["run", str(f), "--out-dir", str(out), "--quiet"]) == 0
    assert (out / "summary.txt").exists()
    assert capsys.readouterr().out == ""


def test_cli_preset_unknown(capsys):
    assert main(["preset", "fig9", "--out-dir", "/tmp/nowhere"]) == 1
    assert "unknown preset" in capsys.readouterr().err


def test_cli_entry_point(tmp_path):
    f = tmp_path / "run.cfg"
    f.write_text(SMALL_QUANTUM)
    out = tmp_path / "out"
    proc = subprocess.run(
        [sys.executable, "-m", "fluxfree.cli", "run", str(f),
         "--out-dir", str(out), "--quiet"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert (out / "observables.csv").exists()
