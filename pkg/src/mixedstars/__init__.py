"""Majorana stellar representation of mixed-spin (s, 1/2) pure states."""

from .dynamics import (
    Hamiltonian,
    SweepSpec,
    TrajectoryRecord,
    XXZParams,
    build_h1,
    build_h2,
    evolve,
    match_stars,
    run_sweep,
)
from .majorana import (
    PureSpinState,
    Star,
    StarSet,
    ZeroStateError,
    reconstruct_coefficients,
    solve_stars,
    star_polynomial,
    state_stars,
    z_to_sphere,
)
from .mixedspin import (
    Decomposition,
    FullRepresentation,
    MixedSpinState,
    compose,
    decompose,
    full_representation,
    pseudo_spin_star,
)
from .spinops import block_matrices, coupling_transform, j_squared, ladder_operators

__all__ = [
    "Decomposition",
    "FullRepresentation",
    "Hamiltonian",
    "MixedSpinState",
    "PureSpinState",
    "Star",
    "StarSet",
    "SweepSpec",
    "TrajectoryRecord",
    "XXZParams",
    "ZeroStateError",
    "block_matrices",
    "build_h1",
    "build_h2",
    "compose",
    "coupling_transform",
    "decompose",
    "evolve",
    "full_representation",
    "j_squared",
    "ladder_operators",
    "match_stars",
    "pseudo_spin_star",
    "reconstruct_coefficients",
    "run_sweep",
    "solve_stars",
    "star_polynomial",
    "state_stars",
    "z_to_sphere",
]
