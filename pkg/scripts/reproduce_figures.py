"""Regenerate the trajectory data and sphere views for the two example families.

    python3 scripts/reproduce_figures.py --out figures

Each experiment writes ``<name>.csv`` (one row per star per grid point) and
one SVG per requested view.
"""

from __future__ import annotations

import argparse
import math
from dataclasses import dataclass, field
from pathlib import Path

from mixedstars import files, plot
from mixedstars.dynamics import SweepSpec, run_sweep

PI = math.pi


@dataclass(frozen=True)
class Experiment:
    name: str
    spec: SweepSpec
    sets: tuple[str, ...] = ("upper", "lower", "pseudo")
    views: tuple[str, ...] = ("front",)
    note: str = ""


def half_half(variable, start, stop, steps, **kw) -> SweepSpec:
    return SweepSpec(variable, start, stop, steps, state_family="half_half", **kw)


def one_half(variable, start, stop, steps, **kw) -> SweepSpec:
    return SweepSpec(variable, start, stop, steps, state_family="one_half", **kw)


EXPERIMENTS = [
    Experiment("hh_varphi_t0", half_half("varphi", 0, 2 * PI, 200, open_interval=True),
               note="real roots: triplet stars on the prime meridian"),
    Experiment("hh_varphi_t_pi6", half_half("varphi", 0, 2 * PI, 200, t=PI / 6, open_interval=True)),
    Experiment("hh_varphi_t_pi4", half_half("varphi", 0, 2 * PI, 200, t=PI / 4, open_interval=True), ("upper",),
               note="triplet stars on the 90 degree meridians"),
    Experiment("hh_varphi_t_3pi4", half_half("varphi", 0, 2 * PI, 200, t=3 * PI / 4, open_interval=True), ("upper",)),
    Experiment("hh_t_varphi_2pi3", half_half("t", 0, PI, 200, varphi=2 * PI / 3),
               note="pseudo star fixed while the triplet pair circulates"),
    Experiment("hh_t_half_period", half_half("t", 0, PI / 2, 100, varphi=2 * PI / 3), ("upper",)),
    Experiment("oh_t_varphi_pi6", one_half("t", 0, 4 * PI, 400, varphi=PI / 6), views=("front", "right")),
    Experiment("oh_t_varphi_2pi3", one_half("t", 0, 4 * PI, 400, varphi=2 * PI / 3)),
    Experiment("oh_t_pseudo_pi4", one_half("t", 0, 4 * PI, 400, varphi=PI / 4), ("pseudo",), ("right",),
               note="pseudo star leaves the north pole and returns"),
    Experiment("oh_t_pseudo_5pi4", one_half("t", 0, 4 * PI, 400, varphi=5 * PI / 4), ("pseudo",), ("right",)),
    Experiment("oh_varphi_t_pi2", one_half("varphi", 0, 2 * PI, 200, t=PI / 2)),
    Experiment("oh_varphi_t0", one_half("varphi", 0, 2 * PI, 200), note="real roots: every star on the prime meridian"),
    Experiment("oh_varphi_pseudo_t_pi_sqrt2", one_half("varphi", 0, 2 * PI, 200, t=PI / math.sqrt(2)), ("pseudo",)),
    Experiment("oh_varphi_upper_t_pi3", one_half("varphi", 0, 2 * PI, 200, t=PI / 3), ("upper",), ("right",)),
    Experiment("oh_varphi_lower_t_pi3", one_half("varphi", 0, 2 * PI, 200, t=PI / 3), ("lower",), ("right",)),
]


def run(exp: Experiment, out: Path, workers: int) -> int:
    records = run_sweep(exp.spec, workers=workers)
    (out / f"{exp.name}.csv").write_text(files.trajectory_csv(records))
    points = [(r.set_label, r.theta, r.phi) for r in records if r.set_label in exp.sets]
    for view in exp.views:
        (out / f"{exp.name}_{view}.svg").write_text(plot.render(points, view, f"{exp.name} ({view})"))
    return len(records)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Path("figures"))
    parser.add_argument("--only", nargs="*", help="experiment names to run")
    parser.add_argument("--workers", type=int, default=4)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for exp in EXPERIMENTS:
        if args.only and exp.name not in args.only:
            continue
        n = run(exp, args.out, args.workers)
        suffix = f"  # {exp.note}" if exp.note else ""
        print(f"{exp.name:<28} {n:>6} rows{suffix}")


if __name__ == "__main__":
    main()
