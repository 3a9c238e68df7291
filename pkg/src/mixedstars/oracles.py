"""Closed-form star positions and the two worked example state families.

These are independent of the root finder and of the coupled-basis
decomposition, so they serve as ground truth for the numeric pipeline.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .dynamics import XXZParams, build_h1, build_h2, evolve
from .majorana import Star, StarSet, z_to_sphere
from .mixedspin import MixedSpinState

# |sin(2 varphi)| below this makes the triplet quadratic degenerate
DEGENERATE_ATOL = 1e-12


@dataclass(frozen=True)
class HalfHalfParams:
    varphi: float
    delta: float = 0.0
    t: float = 0.0


@dataclass(frozen=True)
class OneHalfParams:
    varphi: float
    delta: float = 0.0
    t: float = 0.0


def example_state_half_half(p: HalfHalfParams) -> MixedSpinState:
    """exp(-i H1 t) (cos|up> + sin|down>) x (sin|up> + cos|down>)."""
    c, s = math.cos(p.varphi), math.sin(p.varphi)
    first = np.array([s, c])  # (down, up)
    second = np.array([c, s])
    state = MixedSpinState.from_vector(1, np.kron(first, second))
    return evolve(build_h1(XXZParams(p.delta)), p.t, state)


def example_state_one_half(p: OneHalfParams) -> MixedSpinState:
    """exp(-i H2 t) (cos|1> + |0> + sin|-1>)/sqrt(2) x (cos|up> + sin|down>)."""
    c, s = math.cos(p.varphi), math.sin(p.varphi)
    spin_one = np.array([s, 1.0, c]) / math.sqrt(2)  # m = -1, 0, +1
    spin_half = np.array([s, c])
    state = MixedSpinState.from_vector(2, np.kron(spin_one, spin_half))
    return evolve(build_h2(2, XXZParams(p.delta)), p.t, state)


def triplet_roots_closed_form(p: HalfHalfParams) -> tuple[complex, complex]:
    """Roots of sin cos e^{-i d t} z^2 - e^{i(d-2)t} z + sin cos e^{-i d t} = 0.

    Dividing through gives z = (w +- sqrt(w^2 - sin^2 2varphi)) / sin 2varphi
    with w = exp(2i(delta-1)t).
    """
    sin2 = math.sin(2 * p.varphi)
    if abs(sin2) < DEGENERATE_ATOL:
        raise ValueError("degenerate closed form; use numeric pipeline")
    w = cmath.exp(2j * (p.delta - 1) * p.t)
    root = cmath.sqrt(w * w - sin2 * sin2)
    return (w + root) / sin2, (w - root) / sin2


def triplet_stars_closed_form(p: HalfHalfParams) -> StarSet:
    stars = [Star(*z_to_sphere(z)) for z in triplet_roots_closed_form(p)]
    return StarSet(tuple(stars), 2)


def pseudo_star_closed_form_half_half(varphi: float) -> Star:
    cos2 = math.cos(2 * varphi)
    sin2 = math.sin(2 * varphi)
    z = math.sqrt(cos2 * cos2 / (sin2 * sin2 + 1))
    return Star(2 * math.atan(z), 0.0)
