"""Command-line front end: run scenario files, presets, or validate them.

Exit status: 0 on success, 1 for scenario validation errors, 2 for solver
failures.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .quantum import SolverError
from .scenario import (
    PRESET_NAMES,
    ScenarioError,
    load_scenario,
    preset,
    run_scenario,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fluxfree",
        description="Classical and quantum motion in a flux-free magnetic field region",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a scenario file")
    run_p.add_argument("scenario", help="path to a scenario file")

    preset_p = sub.add_parser("preset", help="run a named preset scenario")
    preset_p.add_argument("name", help=f"preset name: {', '.join(PRESET_NAMES)}")

    for p in (run_p, preset_p):
        p.add_argument("--out-dir", default="out", help="output directory (default: out)")
        p.add_argument("--stride", type=int, default=None,
                       help="override the scenario's output stride")
        p.add_argument("--quiet", action="store_true", help="suppress progress output")

    val_p = sub.add_parser("validate", help="check a scenario file without running it")
    val_p.add_argument("scenario", help="path to a scenario file")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)

    try:
        if args.command == "validate":
            load_scenario(args.scenario)
            print(f"{args.scenario}: valid")
            return 0
        if args.command == "run":
            scn = load_scenario(args.scenario)
        else:
            scn = preset(args.name)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ScenarioError as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return 1

    try:
        run_scenario(scn, args.out_dir, stride=args.stride, quiet=args.quiet)
    except ScenarioError as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return 1
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
