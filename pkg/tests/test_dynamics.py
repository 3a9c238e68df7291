import math

import numpy as np
import pytest

from mixedstars import dynamics, mixedspin, spinops
from mixedstars.dynamics import SweepSpec, XXZParams, build_h1, build_h2, evolve, match_stars, run_sweep
from mixedstars.majorana import Star, StarSet
from mixedstars.mixedspin import MixedSpinState
from mixedstars.validate import random_hamiltonian, random_mixed_state, set_distance

from .conftest import TWICE_S


def test_h1_xy_spectrum():
    h = build_h1(XXZParams(0.0))
    assert np.allclose(np.linalg.eigvalsh(h.matrix), [-2, 0, 0, 2], atol=1e-12)
    # flip-flop between |up down> (index 2) and |down up> (index 1)
    assert h.matrix[1, 2] == pytest.approx(2)
    assert np.allclose(np.diag(h.matrix), 0)


def test_h1_heisenberg_spectrum():
    assert np.allclose(np.linalg.eigvalsh(build_h1(XXZParams(1.0)).matrix), [-3, 1, 1, 1], atol=1e-12)


def test_h2_is_quarter_of_h1_at_spin_half():
    for delta in (0.0, 0.3, 1.0):
        assert np.allclose(build_h2(1, XXZParams(delta)).matrix, build_h1(XXZParams(delta)).matrix / 4)


def test_h2_spin_one_heisenberg():
    h = build_h2(2, XXZParams(1.0))
    assert np.allclose(np.linalg.eigvalsh(h.matrix), [-1, -1, 0.5, 0.5, 0.5, 0.5], atol=1e-12)
    j2 = spinops.j_squared(2)
    assert np.allclose(h.matrix @ j2, j2 @ h.matrix, rtol=0, atol=1e-12)


@pytest.mark.parametrize("twice_s", TWICE_S)
@pytest.mark.parametrize("delta", [-0.7, 0.0, 0.5, 1.0, 2.5])
def test_hamiltonian_symmetries(twice_s, delta):
    h = build_h2(twice_s, XXZParams(delta))
    jz = spinops.total_jz(twice_s)
    assert spinops.is_hermitian(h.matrix)
    assert np.allclose(h.matrix @ jz, jz @ h.matrix, rtol=0, atol=1e-12)


def test_evolve_zero_time_is_identity(rng):
    psi = random_mixed_state(rng, 3)
    out = evolve(build_h2(3, XXZParams(0.4)), 0.0, psi)
    assert np.max(np.abs(out.vector - psi.vector)) <= 1e-14


def test_evolve_dimension_mismatch(rng):
    with pytest.raises(ValueError, match="dimension"):
        evolve(build_h2(2, XXZParams()), 1.0, random_mixed_state(rng, 3))


def test_evolve_matches_scipy_expm(rng):
    from scipy.linalg import expm

    h = random_hamiltonian(rng, 2)
    psi = random_mixed_state(rng, 2)
    expected = expm(-1j * h.matrix * 0.7) @ psi.vector
    assert np.allclose(evolve(h, 0.7, psi).vector, expected, rtol=0, atol=1e-12)


def test_unitarity_and_group_law(rng):
    for _ in range(100):
        ts = int(rng.choice(TWICE_S))
        h = random_hamiltonian(rng, ts)
        psi = random_mixed_state(rng, ts)
        t1, t2 = rng.uniform(-5, 5, size=2)
        assert abs(evolve(h, t1, psi).norm - 1) < 1e-12
        assert np.allclose(evolve(h, t1 + t2, psi).vector, evolve(h, t2, evolve(h, t1, psi)).vector, atol=1e-10)


def test_upper_sector_state_only_gains_phase():
    # |3/2, 3/2> = |2>|up>: eigenvalue 1/2 of H2 at delta = 1
    vec = np.zeros(6, dtype=complex)
    vec[5] = 1
    psi = MixedSpinState.from_vector(2, vec)
    h = build_h2(2, XXZParams(1.0))
    for t in (0.3, 2.0, 7.1):
        out = evolve(h, t, psi)
        assert np.allclose(out.vector, np.exp(-0.5j * t) * vec, atol=1e-12)


def test_upper_sector_representation_is_time_invariant(rng):
    e = rng.normal(size=4) + 1j * rng.normal(size=4)
    dec = mixedspin.Decomposition(
        2,
        mixedspin.PureSpinState(3, e / np.linalg.norm(e)),
        mixedspin.PureSpinState(1, np.zeros(2)),
        1.0,
        0.0,
    )
    psi = mixedspin.compose(dec)
    h = build_h2(2, XXZParams(1.0))
    base = mixedspin.full_representation(psi)
    for t in np.linspace(0, 4 * np.pi, 7):
        rep = mixedspin.full_representation(evolve(h, t, psi))
        assert set_distance(base.upper_stars, rep.upper_stars) < 1e-9
        assert rep.lower_stars is None


def test_match_identity():
    ss = StarSet((Star(0.3, 1.0), Star(1.2, 4.0), Star(2.0, 0.5)), 3)
    assert match_stars(ss, ss) == (0, 1, 2)


def test_match_follows_proximity():
    # two stars on the same parallel whose canonical order swaps when phi crosses 2 pi
    prev = [Star(1.0, 2 * math.pi - 0.004), Star(1.0, 3.0)]
    nxt = StarSet((Star(1.0, 0.003), Star(1.0, 3.005)), 2)
    units = nxt.unit_stars()
    perm = match_stars(prev, nxt)
    assert perm == (0, 1)
    # canonical order of the previous set puts the 2 pi star last
    prev_set = StarSet(tuple(prev), 2)
    perm = match_stars(prev_set, nxt)
    assert [units[k].phi for k in perm] == pytest.approx([3.005, 0.003])
    cost = sum(dynamics.great_circle(p, units[k]) for p, k in zip(prev_set.unit_stars(), perm))
    assert cost < 0.02


def test_match_ties_are_deterministic():
    pair = StarSet((Star(math.pi / 2, 0.0), Star(math.pi / 2, math.pi)), 2)
    rotated = StarSet(tuple(Star(s.theta, s.phi + math.pi) for s in pair), 2)
    assert match_stars(pair, rotated) == match_stars(pair, rotated) == (0, 1)


def test_match_expands_multiplicity():
    a = StarSet((Star(0.0, 0.0, 2), Star(1.0, 1.0)), 3)
    b = StarSet((Star(0.01, 0.0), Star(0.02, 3.0), Star(1.0, 1.01)), 3)
    assert match_stars(a, b) == (0, 1, 2)
    with pytest.raises(ValueError):
        match_stars(a, StarSet((Star(0.0, 0.0),), 1))


def test_sweep_spec_guards():
    with pytest.raises(ValueError, match="start < stop"):
        SweepSpec("t", 0.0, 0.0, 2)
    with pytest.raises(ValueError, match="steps"):
        SweepSpec("t", 0.0, 1.0, 1)
    with pytest.raises(ValueError):
        SweepSpec("t", 0.0, 1.0, 3, state_family="file")


def test_open_grid_excludes_endpoints():
    spec = SweepSpec("varphi", 0.0, math.pi / 2, 4, open_interval=True)
    grid = spec.grid()
    assert len(grid) == 4 and grid[0] > 0 and grid[-1] < math.pi / 2


def test_half_half_pseudo_fixed_in_time():
    spec = SweepSpec("t", 0.0, math.pi, 50, delta=0.0, varphi=2 * math.pi / 3)
    pseudo = [(r.theta, r.phi) for r in run_sweep(spec) if r.set_label == "pseudo"]
    assert len(pseudo) == 50
    assert np.ptp([p[0] for p in pseudo]) < 1e-12
    assert all(p[1] == 0.0 for p in pseudo)


def test_one_half_delta_one_is_static():
    spec = SweepSpec("t", 0.0, 4 * math.pi, 40, delta=1.0, varphi=math.pi / 6, state_family="one_half")
    records = run_sweep(spec)
    first = {(r.set_label, r.star_index): r for r in records if r.t == 0.0}
    for r in records:
        ref = first[(r.set_label, r.star_index)]
        assert dynamics.great_circle(Star(r.theta, r.phi), Star(ref.theta, ref.phi)) < 1e-9


def test_sweep_order_and_determinism():
    spec = SweepSpec("varphi", 0.2, 1.2, 6, t=0.4, delta=0.5, state_family="one_half")
    records = run_sweep(spec)
    assert records == run_sweep(spec) == run_sweep(spec, workers=3)
    keys = [(k, r.set_label, r.star_index) for k, r in enumerate(records)]
    order = {"upper": 0, "lower": 1, "pseudo": 2}
    flat = [(r.varphi, order[r.set_label], r.star_index) for r in records]
    assert flat == sorted(flat)
    assert len(keys) == 6 * 5


def test_file_family_uses_h2(rng):
    psi = random_mixed_state(rng, 3)
    spec = SweepSpec("t", 0.0, 1.0, 3, delta=0.2, state_family="file", initial_state=psi)
    records = run_sweep(spec)
    last = evolve(build_h2(3, XXZParams(0.2)), 1.0, psi)
    pseudo = mixedspin.full_representation(last).pseudo_star
    assert [r for r in records if r.set_label == "pseudo"][-1].theta == pytest.approx(pseudo.theta, abs=1e-12)
