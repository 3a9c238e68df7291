"""Command-line entry point: ``mixedstars {stars,sweep,validate,plot}``.

Exit codes: 0 success, 1 validation failure, 2 usage or parse error,
3 invalid (zero) state.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import files, plot, validate
from .dynamics import SweepSpec, run_sweep
from .majorana import ZeroStateError
from .mixedspin import full_representation

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_STATE = 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _write(path: str, text: str) -> None:
    # newline="" keeps "\n" on every platform so output bytes are stable
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(text)


def cmd_stars(args: argparse.Namespace) -> int:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        state, metadata = files.parse_state(_read(args.input))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    rep = full_representation(state)
    _write(args.output, files.dumps(files.star_file(rep, metadata)))
    return EXIT_OK


def sweep_spec(args: argparse.Namespace) -> SweepSpec:
    initial = None
    if args.family == "file":
        if not args.state:
            raise UsageError("--family file needs --state FILE")
        initial, _ = files.parse_state(_read(args.state))
    try:
        return SweepSpec(
            variable=args.var,
            start=args.start,
            stop=args.stop,
            steps=args.steps,
            delta=args.delta,
            varphi=args.varphi,
            t=args.t,
            state_family=args.family,
            initial_state=initial,
            open_interval=args.open,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def sweep_metadata(spec: SweepSpec) -> dict:
    meta = {
        "family": spec.state_family,
        "variable": spec.variable,
        "start": spec.start,
        "stop": spec.stop,
        "steps": spec.steps,
        "open_interval": spec.open_interval,
        "delta": spec.delta,
    }
    if spec.variable == "t":
        meta["varphi"] = spec.varphi
    else:
        meta["t"] = spec.t
    return meta


def cmd_sweep(args: argparse.Namespace) -> int:
    spec = sweep_spec(args)
    records = run_sweep(spec, workers=args.workers)
    if args.format == "csv":
        text = files.trajectory_csv(records)
    else:
        text = files.trajectory_json(records, sweep_metadata(spec))
    _write(args.output, text)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        if args.inject_fault:
            with validate.inject_fault(args.inject_fault):
                results = validate.run_checks(args.scope)
        else:
            results = validate.run_checks(args.scope)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    width = max(len(c.name) for c, *_ in results)
    failed = 0
    for chk, ok, worst, tol in results:
        failed += not ok
        status = "PASS" if ok else "FAIL"
        print(f"{status}  {chk.module:<10} {chk.name:<{width}}  worst={worst:.3e} tol={tol:.0e}")
    print(f"{len(results) - failed}/{len(results)} invariants passed")
    return EXIT_OK if failed == 0 else EXIT_VALIDATION


def plot_points(text: str) -> tuple[list[tuple[str, float, float]], str]:
    """Markers and a title from either a star file or a trajectory file."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise files.FileFormatError(f"malformed JSON: {exc}") from exc
        if isinstance(data, dict) and "stars" in data:
            parsed = files.parse_star_file(text)
            meta = parsed["metadata"]
            points = [(r["set"], r["theta"], r["phi"]) for r in parsed["stars"]]
            return points, f"2s = {meta['two_s']}"
    records = files.parse_trajectory(text)
    return [(r.set_label, r.theta, r.phi) for r in records], f"{len(records)} records"


def cmd_plot(args: argparse.Namespace) -> int:
    points, title = plot_points(_read(args.input))
    _write(args.output, plot.render(points, args.view, f"{args.view} view, {title}"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mixedstars", description="Majorana stars of mixed-spin (s, 1/2) pure states."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stars", help="stars of a state file")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_stars)

    p = sub.add_parser("sweep", help="star trajectories over t or varphi")
    p.add_argument("--family", choices=("half_half", "one_half", "file"), required=True)
    p.add_argument("--state", help="state file for --family file")
    p.add_argument("--var", choices=("t", "varphi"), required=True)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--varphi", type=float, default=0.0, help="fixed varphi for time sweeps")
    p.add_argument("--t", type=float, default=0.0, help="fixed time for varphi sweeps")
    p.add_argument("--open", action="store_true", help="exclude both endpoints of the range")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="run the invariant suites")
    p.add_argument("--scope", default="all", help="all or one of: " + ", ".join(validate.MODULES))
    p.add_argument("--inject-fault", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("plot", help="orthographic SVG of a star or trajectory file")
    p.add_argument("--input", required=True)
    p.add_argument("--view", choices=plot.VIEWS, default="front")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ZeroStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STATE
    except (UsageError, files.FileFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
