"""Seeded invariant checks for every module, run by ``mixedstars validate``."""

from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass
from typing import Callable, Iterator
from unittest import mock

import numpy as np

from . import dynamics, majorana, mixedspin, oracles, spinops
from .dynamics import XXZParams, build_h1, build_h2, evolve, run_sweep, SweepSpec
from .majorana import PureSpinState, Star, StarSet
from .mixedspin import MixedSpinState

TWICE_S_RANGE = (1, 2, 3, 4, 5)
MODULES = ("spinops", "majorana", "mixedspin", "dynamics", "oracles")
SEED = 20190301


def random_mixed_state(rng: np.random.Generator, twice_s: int) -> MixedSpinState:
    dim = 2 * (twice_s + 1)
    vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return MixedSpinState.from_vector(twice_s, vec / np.linalg.norm(vec))


def random_pure_state(rng: np.random.Generator, twice_j: int, zero_leading: int = 0) -> PureSpinState:
    """Random spin-j state; the top ``zero_leading`` amplitudes are forced to 0."""
    amps = rng.normal(size=twice_j + 1) + 1j * rng.normal(size=twice_j + 1)
    if zero_leading:
        amps[twice_j + 1 - zero_leading :] = 0
    return PureSpinState(twice_j, amps / np.linalg.norm(amps))


def random_hamiltonian(rng: np.random.Generator, twice_s: int) -> dynamics.Hamiltonian:
    dim = 2 * (twice_s + 1)
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return dynamics.Hamiltonian((m + m.conj().T) / 2, twice_s, "random")


def angle_gap(a: float, b: float) -> float:
    """Distance between two angles on the circle."""
    return abs((a - b + math.pi) % (2 * math.pi) - math.pi)


def set_distance(a: StarSet, b: StarSet) -> float:
    """Largest great-circle distance between optimally matched unit stars."""
    ua, ub = a.unit_stars(), b.unit_stars()
    if len(ua) != len(ub):
        return math.inf
    if not ua:
        return 0.0
    perm = dynamics.match_stars(ua, ub)
    return max(majorana.great_circle(p, ub[k]) for p, k in zip(ua, perm))


@dataclass(frozen=True)
class Check:
    module: str
    name: str
    fn: Callable[[np.random.Generator], tuple[float, float]]

    def run(self, seed: int = SEED) -> tuple[bool, float, float]:
        """Return (passed, worst observed value, tolerance)."""
        worst, tol = self.fn(np.random.default_rng(seed))
        return bool(worst <= tol), worst, tol


CHECKS: list[Check] = []


def check(module: str, name: str):
    def register(fn):
        CHECKS.append(Check(module, name, fn))
        return fn

    return register


# spinops


@check("spinops", "commutator [S_z, S_+] = S_+")
def _commutator(rng):
    worst = 0.0
    for ts in TWICE_S_RANGE:
        sp, _, sz = spinops.ladder_operators(ts)
        worst = max(worst, float(np.max(np.abs(sz @ sp - sp @ sz - sp))))
    return worst, 1e-12


@check("spinops", "S_- equals S_+ dagger")
def _adjoint(rng):
    worst = 0.0
    for ts in TWICE_S_RANGE:
        sp, sm, _ = spinops.ladder_operators(ts)
        worst = max(worst, float(np.max(np.abs(sm - sp.conj().T))))
    return worst, 0.0


@check("spinops", "J^2 equals (S + sigma/2)^2")
def _j2_direct(rng):
    worst = 0.0
    for ts in TWICE_S_RANGE:
        big = spinops.cartesian_operators(ts)
        small = spinops.cartesian_operators(1)
        total = [np.kron(b, np.eye(2)) + np.kron(np.eye(ts + 1), s) for b, s in zip(big, small)]
        direct = sum(op @ op for op in total)
        worst = max(worst, float(np.max(np.abs(direct - spinops.j_squared(ts)))))
    return worst, 1e-12


@check("spinops", "coupling transform is real and unitary")
def _coupling_unitary(rng):
    worst = 0.0
    for ts in TWICE_S_RANGE:
        u = np.asarray(spinops.coupling_transform(ts).matrix)
        worst = max(worst, float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))))
        worst = max(worst, float(np.max(np.abs(np.imag(u)))))
    return worst, 1e-12


@check("spinops", "coupled basis vectors are J^2 eigenvectors")
def _coupling_eigen(rng):
    worst = 0.0
    for ts in TWICE_S_RANGE:
        ct = spinops.coupling_transform(ts)
        j2 = spinops.j_squared(ts)
        up, low = spinops.sector_eigenvalues(ts)
        for row, (sector, _) in zip(ct.matrix, ct.coupled_labels):
            value = up if sector == "upper" else low
            worst = max(worst, float(np.linalg.norm(j2 @ row - value * row)))
    return worst, 1e-12


@check("spinops", "A_n eigenvalues are j(j+1) of both sectors")
def _blocks(rng):
    worst = 0.0
    for ts in TWICE_S_RANGE:
        blocks, edges = spinops.block_matrices(ts)
        up, low = spinops.sector_eigenvalues(ts)
        for a_n in blocks:
            worst = max(worst, float(np.max(np.abs(np.linalg.eigvalsh(a_n) - [low, up]))))
        worst = max(worst, abs(edges[0] - up), abs(edges[1] - up))
    return worst, 1e-12


@check("spinops", "block direct sum reproduces J^2")
def _block_sum(rng):
    worst = 0.0
    for ts in TWICE_S_RANGE:
        worst = max(worst, float(np.max(np.abs(spinops.assemble_blocks(ts) - spinops.j_squared(ts)))))
    return worst, 1e-12


# majorana


@check("majorana", "star count equals 2j")
def _count(rng):
    bad = 0
    for tj in TWICE_S_RANGE:
        for k in range(200):
            state = random_pure_state(rng, tj, zero_leading=k % (tj + 1))
            bad += majorana.state_stars(state).count != tj
    return float(bad), 0.0


@check("majorana", "finite roots satisfy the residual bound")
def _residual(rng):
    worst = 0.0
    for tj in TWICE_S_RANGE:
        for _ in range(100):
            a = majorana.star_polynomial(random_pure_state(rng, tj))
            roots, _ = majorana.polynomial_roots(a)
            for z in roots:
                p = np.polyval(a[::-1], z)
                bound = np.sum(np.abs(a)) * max(1.0, abs(z)) ** tj
                worst = max(worst, abs(p) / bound)
    return worst, 1e-9


@check("majorana", "stars are invariant under coefficient scaling")
def _scale(rng):
    worst = 0.0
    for tj in TWICE_S_RANGE:
        for _ in range(50):
            a = majorana.star_polynomial(random_pure_state(rng, tj))
            lam = complex(*rng.normal(size=2)) * 10 ** rng.uniform(-3, 3)
            worst = max(worst, set_distance(majorana.solve_stars(a, tj), majorana.solve_stars(lam * a, tj)))
    return worst, 1e-10


@check("majorana", "stars are invariant under a global phase")
def _phase(rng):
    worst = 0.0
    for tj in TWICE_S_RANGE:
        for _ in range(50):
            state = random_pure_state(rng, tj)
            rotated = PureSpinState(tj, np.exp(1j * rng.uniform(0, 2 * np.pi)) * state.amplitudes)
            worst = max(worst, set_distance(majorana.state_stars(state), majorana.state_stars(rotated)))
    return worst, 1e-10


def rotate_about_z(state: PureSpinState, alpha: float) -> PureSpinState:
    m = np.arange(state.twice_j + 1) - state.twice_j / 2
    return PureSpinState(state.twice_j, np.exp(-1j * m * alpha) * state.amplitudes)


def z_rotation_sign() -> int:
    """Direction in which stars turn when a spin-1/2 is rotated by exp(-i alpha J_z)."""
    state = PureSpinState(1, np.array([1.0, 1.0]) / math.sqrt(2))
    before = majorana.state_stars(state).stars[0]
    after = majorana.state_stars(rotate_about_z(state, 0.3)).stars[0]
    shift = (after.phi - before.phi) % (2 * math.pi)
    return 1 if abs(shift - 0.3) < abs(shift - (2 * math.pi - 0.3)) else -1


@check("majorana", "z rotation shifts every azimuth")
def _zrot(rng):
    sign = z_rotation_sign()
    worst = 0.0
    for tj in TWICE_S_RANGE:
        for _ in range(50):
            state = random_pure_state(rng, tj)
            alpha = rng.uniform(-np.pi, np.pi)
            before = majorana.state_stars(state)
            after = majorana.state_stars(rotate_about_z(state, alpha))
            expected = StarSet(
                tuple(Star(s.theta, s.phi + sign * alpha, s.multiplicity) for s in before), tj
            )
            worst = max(worst, set_distance(expected, after))
    return worst, 1e-9


@check("majorana", "Vieta round trip")
def _vieta(rng):
    worst = 0.0
    for tj in TWICE_S_RANGE:
        for k in range(100):
            a = majorana.star_polynomial(random_pure_state(rng, tj, zero_leading=k % tj))
            stars = majorana.solve_stars(a, tj)
            _, deficit = majorana.polynomial_roots(a)
            rebuilt = majorana.reconstruct_coefficients(stars, deficit)
            worst = max(worst, majorana.proportionality_error(a, rebuilt))
    return worst, 1e-8


# mixedspin


@check("mixedspin", "weights satisfy c_upper^2 + c_lower^2 = 1")
def _weights(rng):
    worst = 0.0
    for ts in TWICE_S_RANGE:
        for _ in range(100):
            dec = mixedspin.decompose(random_mixed_state(rng, ts))
            worst = max(worst, abs(dec.c_upper**2 + dec.c_lower**2 - 1))
    return worst, 1e-10


@check("mixedspin", "compose inverts decompose")
def _roundtrip(rng):
    worst = 0.0
    for ts in TWICE_S_RANGE:
        for _ in range(100):
            state = random_mixed_state(rng, ts)
            back = mixedspin.compose(mixedspin.decompose(state))
            worst = max(worst, float(np.max(np.abs(back.vector - state.vector))))
    return worst, 1e-12


@check("mixedspin", "decomposition agrees with the coupling transform")
def _against_transform(rng):
    worst = 0.0
    for ts in TWICE_S_RANGE:
        ct = spinops.coupling_transform(ts)
        for _ in range(50):
            state = random_mixed_state(rng, ts)
            coupled = ct.matrix @ state.vector
            dec = mixedspin.decompose(state)
            e = dec.c_upper * dec.upper.amplitudes
            f = dec.c_lower * dec.lower.amplitudes
            worst = max(worst, float(np.max(np.abs(coupled[ct.upper_rows()] - e))))
            worst = max(worst, float(np.max(np.abs(coupled[ct.lower_rows()] - f))))
    return worst, 1e-12


@check("mixedspin", "components lie in the right J^2 sectors")
def _sectors(rng):
    worst = 0.0
    for ts in TWICE_S_RANGE:
        j2 = spinops.j_squared(ts)
        up, low = spinops.sector_eigenvalues(ts)
        for _ in range(50):
            dec = mixedspin.decompose(random_mixed_state(rng, ts))
            zero_upper = PureSpinState(ts + 1, np.zeros(ts + 2))
            zero_lower = PureSpinState(ts - 1, np.zeros(ts))
            only_up = mixedspin.compose(mixedspin.Decomposition(ts, dec.upper, zero_lower, 1.0, 0.0))
            only_low = mixedspin.compose(mixedspin.Decomposition(ts, zero_upper, dec.lower, 0.0, 1.0))
            for vec, value in ((only_up.vector, up), (only_low.vector, low)):
                worst = max(worst, float(np.linalg.norm(j2 @ vec - value * vec)))
    return worst, 1e-10


@check("mixedspin", "total star count is 4s+1")
def _star_total(rng):
    bad = 0
    for ts in TWICE_S_RANGE:
        for _ in range(50):
            rep = mixedspin.full_representation(random_mixed_state(rng, ts))
            bad += rep.total_multiplicity != 2 * ts + 1
    return float(bad), 0.0


@check("mixedspin", "pseudo-spin star lies on phi = 0")
def _pseudo_phi(rng):
    worst = 0.0
    for ts in TWICE_S_RANGE:
        for _ in range(50):
            star = mixedspin.pseudo_spin_star(mixedspin.decompose(random_mixed_state(rng, ts)))
            worst = max(worst, abs(star.phi))
    return worst, 0.0


# dynamics


@check("dynamics", "Hamiltonians are Hermitian and conserve J_z")
def _ham(rng):
    worst = 0.0
    for delta in (0.0, 0.5, 1.0, rng.uniform(-2, 2)):
        hams = [build_h1(XXZParams(delta))] + [build_h2(ts, XXZParams(delta)) for ts in TWICE_S_RANGE]
        for h in hams:
            jz = spinops.total_jz(h.twice_s)
            worst = max(worst, float(np.max(np.abs(h.matrix - h.matrix.conj().T))))
            worst = max(worst, float(np.max(np.abs(h.matrix @ jz - jz @ h.matrix))))
    return worst, 1e-12


@check("dynamics", "evolution preserves the norm")
def _unitary(rng):
    worst = 0.0
    for _ in range(100):
        ts = int(rng.choice(TWICE_S_RANGE))
        out = evolve(random_hamiltonian(rng, ts), rng.uniform(-10, 10), random_mixed_state(rng, ts))
        worst = max(worst, abs(out.norm - 1))
    return worst, 1e-12


@check("dynamics", "evolution composes in time")
def _group(rng):
    worst = 0.0
    for _ in range(100):
        ts = int(rng.choice(TWICE_S_RANGE))
        h = random_hamiltonian(rng, ts)
        psi = random_mixed_state(rng, ts)
        t1, t2 = rng.uniform(-5, 5, size=2)
        direct = evolve(h, t1 + t2, psi).vector
        stepped = evolve(h, t2, evolve(h, t1, psi)).vector
        worst = max(worst, float(np.max(np.abs(direct - stepped))))
    return worst, 1e-10


@check("dynamics", "total J_z is conserved")
def _magnetization(rng):
    worst = 0.0
    for ts in TWICE_S_RANGE:
        jz = spinops.total_jz(ts)
        h = build_h2(ts, XXZParams(rng.uniform(0, 1)))
        psi = random_mixed_state(rng, ts)
        m0 = dynamics.expectation(jz, psi)
        for t in rng.uniform(0, 20, size=10):
            worst = max(worst, abs(dynamics.expectation(jz, evolve(h, t, psi)) - m0))
    return worst, 1e-10


@check("dynamics", "sector weights are constant at delta = 1")
def _sector_weights(rng):
    worst = 0.0
    h = build_h2(2, XXZParams(1.0))
    for _ in range(20):
        psi = random_mixed_state(rng, 2)
        d0 = mixedspin.decompose(psi)
        for t in rng.uniform(0, 4 * np.pi, size=5):
            d = mixedspin.decompose(evolve(h, t, psi))
            worst = max(worst, abs(d.c_upper - d0.c_upper), abs(d.c_lower - d0.c_lower))
    return worst, 1e-12


@check("dynamics", "sweeps are deterministic")
def _determinism(rng):
    spec = SweepSpec("t", 0.0, math.pi, 25, delta=0.3, varphi=math.pi / 6, state_family="one_half")
    first = run_sweep(spec)
    second = run_sweep(spec, workers=4)
    return float(first != second), 0.0


# oracles


def _half_half_grid():
    for varphi in (math.pi / 6, math.pi / 3, 2 * math.pi / 3, 5 * math.pi / 6, 7 * math.pi / 6):
        for delta in (0.0, 0.5, 1.0):
            for t in np.linspace(0, math.pi, 11):
                yield oracles.HalfHalfParams(varphi, delta, float(t))


@check("oracles", "closed-form triplet stars match the pipeline")
def _triplet(rng):
    worst = 0.0
    for p in _half_half_grid():
        rep = mixedspin.full_representation(oracles.example_state_half_half(p))
        worst = max(worst, set_distance(oracles.triplet_stars_closed_form(p), rep.upper_stars))
    return worst, 1e-9


@check("oracles", "closed-form pseudo star matches the pipeline")
def _pseudo(rng):
    worst = 0.0
    for p in _half_half_grid():
        rep = mixedspin.full_representation(oracles.example_state_half_half(p))
        expected = oracles.pseudo_star_closed_form_half_half(p.varphi)
        worst = max(worst, majorana.great_circle(expected, rep.pseudo_star))
    return worst, 1e-10


@check("oracles", "triplet pair is symmetric under x-axis half turn")
def _xturn(rng):
    worst = 0.0
    for p in _half_half_grid():
        stars = mixedspin.full_representation(oracles.example_state_half_half(p)).upper_stars
        turned = StarSet(tuple(Star(math.pi - s.theta, -s.phi, s.multiplicity) for s in stars), 2)
        worst = max(worst, set_distance(stars, turned))
    return worst, 1e-9


@check("oracles", "one_half stars lie on the prime meridian at t = 0")
def _meridian(rng):
    worst = 0.0
    for varphi in np.linspace(0, 2 * np.pi, 50, endpoint=False):
        rep = mixedspin.full_representation(oracles.example_state_one_half(oracles.OneHalfParams(float(varphi))))
        for stars in (rep.upper_stars, rep.lower_stars):
            for s in stars or ():
                worst = max(worst, meridian_gap(s))
    return worst, 1e-9


def meridian_gap(star: Star) -> float:
    """Azimuthal distance to the phi in {0, pi} great circle; zero at the poles."""
    if star.theta in (0.0, math.pi):
        return 0.0
    return min(angle_gap(star.phi, 0.0), angle_gap(star.phi, math.pi))


@contextlib.contextmanager
def inject_fault(name: str) -> Iterator[None]:
    """Deliberately corrupt a building block (test hook for the validator)."""
    if name != "coupling":
        raise ValueError(f"unknown fault {name!r}")
    original = spinops.coupling_transform

    def corrupted(twice_s: int):
        ct = original(twice_s)
        matrix = ct.matrix.copy()
        matrix[1, 1] += 1e-3
        return spinops.CouplingTransform(twice_s, matrix, ct.uncoupled_labels, ct.coupled_labels)

    with mock.patch.object(spinops, "coupling_transform", corrupted):
        yield


def run_checks(scope: str = "all", seed: int = SEED) -> list[tuple[Check, bool, float, float]]:
    if scope != "all" and scope not in MODULES:
        raise ValueError(f"unknown scope {scope!r}; choose from all, {', '.join(MODULES)}")
    selected = [c for c in CHECKS if scope in ("all", c.module)]
    return [(c, *c.run(seed)) for c in selected]
