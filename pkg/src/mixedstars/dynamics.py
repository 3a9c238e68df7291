"""XXZ-type two-spin Hamiltonians, exact evolution and star trajectories."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import spinops
from .majorana import Star, StarSet, great_circle
from .mixedspin import FullRepresentation, MixedSpinState, full_representation

SET_LABELS = ("upper", "lower", "pseudo")
# exhaustive assignment up to this many unit stars, Hungarian beyond
EXHAUSTIVE_LIMIT = 8
TIE_ATOL = 1e-12


@dataclass(frozen=True)
class XXZParams:
    """Anisotropy of the z-z coupling. Values outside [0, 1] are accepted."""

    delta: float = 0.0


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    matrix: np.ndarray
    twice_s: int
    form_tag: str

    @cached_property
    def eigh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.linalg.eigh(self.matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def build_h1(params: XXZParams) -> Hamiltonian:
    """Two spin-1/2 with Pauli matrices: s1x s2x + s1y s2y + delta s1z s2z."""
    sx, sy, sz = (2 * op for op in spinops.cartesian_operators(1))
    h = np.kron(sx, sx) + np.kron(sy, sy) + params.delta * np.kron(sz, sz)
    return Hamiltonian(h, 1, "pauli_h1")


def build_h2(twice_s: int, params: XXZParams) -> Hamiltonian:
    """Spin-s with spin-1/2 using spin operators: S1x S2x + S1y S2y + delta S1z S2z."""
    if twice_s < 1:
        raise ValueError("twice_s must be >= 1")
    b_plus, b_minus, b_z = spinops.ladder_operators(twice_s)
    a_plus, a_minus, a_z = spinops.ladder_operators(1)
    h = 0.5 * (np.kron(b_plus, a_minus) + np.kron(b_minus, a_plus)) + params.delta * np.kron(b_z, a_z)
    return Hamiltonian(h, twice_s, "spin_h2")


def evolve(h: Hamiltonian, t: float, state: MixedSpinState) -> MixedSpinState:
    """Apply exp(-i H t) via the eigendecomposition of H."""
    if state.twice_s != h.twice_s or h.dim != 2 * (state.twice_s + 1):
        raise ValueError(
            f"dimension mismatch: Hamiltonian has dim {h.dim}, state has twice_s={state.twice_s}"
        )
    if t == 0:
        return MixedSpinState(state.twice_s, state.d_down.copy(), state.d_up.copy())
    energies, vecs = h.eigh
    psi = vecs @ (np.exp(-1j * energies * t) * (vecs.conj().T @ state.vector))
    return MixedSpinState.from_vector(state.twice_s, psi)


def match_stars(prev: StarSet | Sequence[Star], nxt: StarSet | Sequence[Star]) -> tuple[int, ...]:
    """Permutation ``perm`` of the unit stars of ``nxt`` so that
    ``nxt_units[perm[i]]`` continues ``prev_units[i]``.

    Minimizes the summed great-circle distance. Among optimal assignments
    the lexicographically smallest permutation wins, which favours the
    canonical (theta, phi) order of ``nxt``.
    """
    a = _units(prev)
    b = _units(nxt)
    if len(a) != len(b):
        raise ValueError(f"star count mismatch: {len(a)} vs {len(b)}")
    size = len(a)
    if size == 0:
        return ()
    cost = np.array([[great_circle(p, q) for q in b] for p in a])
    if size > EXHAUSTIVE_LIMIT:
        rows, cols = linear_sum_assignment(cost)
        return tuple(int(c) for c in cols[np.argsort(rows)])
    rows = range(size)
    best, best_cost = None, math.inf
    for perm in itertools.permutations(range(size)):
        total = float(cost[rows, perm].sum())
        if total < best_cost - TIE_ATOL:
            best, best_cost = perm, total
    return tuple(best)


def _units(stars) -> list[Star]:
    if isinstance(stars, StarSet):
        return stars.unit_stars()
    return [Star(s.theta, s.phi) for s in stars for _ in range(s.multiplicity)]


@dataclass(frozen=True)
class TrajectoryRecord:
    t: float
    varphi: float
    delta: float
    set_label: str
    star_index: int
    theta: float
    phi: float


@dataclass(frozen=True)
class SweepSpec:
    """Grid over ``variable`` ("t" or "varphi") with the other one fixed.

    ``state_family`` is "half_half", "one_half" or "file"; the latter needs
    ``initial_state`` and only supports time sweeps. ``open_interval``
    drops both endpoints, keeping ``steps`` interior points.
    """

    variable: str
    start: float
    stop: float
    steps: int
    delta: float = 0.0
    varphi: float = 0.0
    t: float = 0.0
    state_family: str = "half_half"
    initial_state: MixedSpinState | None = field(default=None, compare=False)
    open_interval: bool = False

    def __post_init__(self):
        if self.variable not in ("t", "varphi"):
            raise ValueError(f"unknown sweep variable {self.variable!r}")
        if self.state_family not in ("half_half", "one_half", "file"):
            raise ValueError(f"unknown state family {self.state_family!r}")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValueError("steps >= 2 required")
        if not self.start < self.stop:
            raise ValueError("start < stop required")
        if self.state_family == "file":
            if self.initial_state is None:
                raise ValueError("file family needs an initial_state")
            if self.variable != "t":
                raise ValueError("file family supports time sweeps only")

    def grid(self) -> np.ndarray:
        if self.open_interval:
            return np.linspace(self.start, self.stop, self.steps + 2)[1:-1]
        return np.linspace(self.start, self.stop, self.steps)

    def points(self) -> list[tuple[float, float]]:
        """``(t, varphi)`` for each grid point."""
        if self.variable == "t":
            return [(float(x), float(self.varphi)) for x in self.grid()]
        return [(float(self.t), float(x)) for x in self.grid()]


def family_state(spec: SweepSpec, t: float, varphi: float) -> MixedSpinState:
    from . import oracles

    if spec.state_family == "half_half":
        return oracles.example_state_half_half(oracles.HalfHalfParams(varphi, spec.delta, t))
    if spec.state_family == "one_half":
        return oracles.example_state_one_half(oracles.OneHalfParams(varphi, spec.delta, t))
    h = build_h2(spec.initial_state.twice_s, XXZParams(spec.delta))
    return evolve(h, t, spec.initial_state)


def _set_stars(rep: FullRepresentation, label: str) -> StarSet | None:
    if label == "upper":
        return rep.upper_stars
    if label == "lower":
        return rep.lower_stars
    return StarSet((rep.pseudo_star,), 1)


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[TrajectoryRecord]:
    """Star trajectories over the sweep grid, index-matched between grid points.

    Representations may be computed on ``workers`` threads; matching and
    record order are sequential, so output does not depend on ``workers``.
    """
    points = spec.points()

    def rep_at(point: tuple[float, float]) -> FullRepresentation:
        t, varphi = point
        return full_representation(family_state(spec, t, varphi))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reps = list(pool.map(rep_at, points))
    else:
        reps = [rep_at(p) for p in points]

    records: list[TrajectoryRecord] = []
    previous: dict[str, list[Star] | None] = {label: None for label in SET_LABELS}
    for (t, varphi), rep in zip(points, reps):
        for label in SET_LABELS:
            stars = _set_stars(rep, label)
            if stars is None:
                previous[label] = None
                continue
            units = stars.unit_stars()
            before = previous[label]
            if before is not None and len(before) == len(units):
                perm = match_stars(before, units)
                units = [units[k] for k in perm]
            previous[label] = units
            for index, star in enumerate(units):
                records.append(
                    TrajectoryRecord(t, varphi, spec.delta, label, index, star.theta, star.phi)
                )
    return records


def trajectory_by_star(records: Sequence[TrajectoryRecord]) -> dict[tuple[str, int], list[TrajectoryRecord]]:
    out: dict[tuple[str, int], list[TrajectoryRecord]] = {}
    for rec in records:
        out.setdefault((rec.set_label, rec.star_index), []).append(rec)
    return out


def expectation(operator: np.ndarray, state: MixedSpinState) -> float:
    psi = state.vector
    return float(np.real(np.vdot(psi, operator @ psi)))

