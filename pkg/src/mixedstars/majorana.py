"""Majorana stars of a single spin-j pure state.

A state sum_n C_n |n>_j (with |n>_j = |-j+n>) maps to the polynomial

    p(z) = sum_n (-1)^n sqrt(binom(2j, n)) C_n z^n

whose 2j roots, sent through z = tan(theta/2) exp(i phi), are the stars.
Roots lost to a vanishing leading coefficient sit at infinity, i.e. the
south pole theta = pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

TWO_PI = 2 * math.pi
# coefficients below this fraction of the largest one are treated as zero
ZERO_COEFF_RTOL = 64 * np.finfo(float).eps
CLUSTER_TOL = 1e-8
NEWTON_STEPS = 8
# groups of eigenvalues closer than this are tested for being one multiple root
MULTIROOT_SEARCH = 1e-2
# backward-error bound on the Taylor coefficients that must vanish at a multiple root
MULTIROOT_RTOL = 1e-13


class ZeroStateError(ValueError):
    """Raised when a state or star polynomial is identically zero."""


@dataclass(frozen=True, eq=False)
class PureSpinState:
    twice_j: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.twice_j + 1:
            raise ValueError(f"expected {self.twice_j + 1} amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True, order=True)
class Star:
    theta: float
    phi: float
    multiplicity: int = 1

    def __post_init__(self):
        theta, phi = canonical_angles(self.theta, self.phi)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    @property
    def xyz(self) -> np.ndarray:
        return sphere_point(self.theta, self.phi)


@dataclass(frozen=True)
class StarSet:
    stars: tuple[Star, ...]
    twice_j: int

    def __post_init__(self):
        stars = tuple(sorted(self.stars, key=lambda s: (s.theta, s.phi)))
        object.__setattr__(self, "stars", stars)
        total = sum(s.multiplicity for s in stars)
        if total != self.twice_j:
            raise ValueError(f"star multiplicities sum to {total}, expected {self.twice_j}")

    def __len__(self) -> int:
        return len(self.stars)

    def __iter__(self):
        return iter(self.stars)

    @property
    def count(self) -> int:
        return self.twice_j

    def unit_stars(self) -> list[Star]:
        """Stars with multiplicity expanded, in canonical order."""
        return [Star(s.theta, s.phi) for s in self.stars for _ in range(s.multiplicity)]


def canonical_angles(theta: float, phi: float) -> tuple[float, float]:
    theta = float(min(max(theta, 0.0), math.pi))
    if theta == 0.0 or theta == math.pi:
        return theta, 0.0
    phi = float(phi) % TWO_PI
    if phi >= TWO_PI:
        phi = 0.0
    return theta, phi


def sphere_point(theta: float, phi: float) -> np.ndarray:
    st = math.sin(theta)
    return np.array([st * math.cos(phi), st * math.sin(phi), math.cos(theta)])


def great_circle(a: Star, b: Star) -> float:
    """Angular distance between two stars, accurate for small separations."""
    u, v = a.xyz, b.xyz
    return math.atan2(float(np.linalg.norm(np.cross(u, v))), float(np.dot(u, v)))


def chordal(z1: complex, z2: complex) -> float:
    return abs(z1 - z2) / math.sqrt((1 + abs(z1) ** 2) * (1 + abs(z2) ** 2))


def star_polynomial(state: PureSpinState) -> np.ndarray:
    """Coefficients a_n of z^n, lowest power first."""
    n = np.arange(state.twice_j + 1)
    weights = np.array([math.sqrt(math.comb(state.twice_j, k)) for k in n])
    signs = np.where(n % 2 == 0, 1.0, -1.0)
    return signs * weights * state.amplitudes


def z_to_sphere(z: complex) -> tuple[float, float]:
    theta = 2 * math.atan(abs(z))
    if z == 0:
        return 0.0, 0.0
    return canonical_angles(theta, math.atan2(z.imag, z.real))


def sphere_to_z(theta: float, phi: float) -> complex:
    """Inverse of :func:`z_to_sphere`; returns ``inf`` at the south pole."""
    if theta >= math.pi:
        return complex(math.inf)
    return math.tan(theta / 2) * complex(math.cos(phi), math.sin(phi))


def _companion_roots(a: np.ndarray) -> np.ndarray:
    """Roots of sum a_n z^n with a[0] != 0 and a[-1] != 0."""
    deg = a.size - 1
    if deg == 0:
        return np.empty(0, dtype=complex)
    if deg == 1:
        return np.array([-a[0] / a[1]])
    comp = np.zeros((deg, deg), dtype=complex)
    comp[1:, :-1] = np.eye(deg - 1)
    comp[:, -1] = -a[:-1] / a[-1]
    return np.linalg.eigvals(comp)


def _horner(a: np.ndarray, z: complex) -> tuple[complex, complex]:
    p = 0j
    dp = 0j
    for coeff in a[::-1]:
        dp = dp * z + p
        p = p * z + coeff
    return p, dp


def _polish(a: np.ndarray, z: complex) -> complex:
    p, dp = _horner(a, z)
    for _ in range(NEWTON_STEPS):
        if p == 0 or dp == 0:
            break
        candidate = z - p / dp
        p_new, dp_new = _horner(a, candidate)
        if not abs(p_new) < abs(p):
            break
        z, p, dp = candidate, p_new, dp_new
    return z


def _taylor(a: np.ndarray, c: complex, order: int) -> np.ndarray:
    """First ``order`` Taylor coefficients p^(k)(c)/k! by repeated synthetic division."""
    work = np.array(a, dtype=complex)
    out = np.empty(order, dtype=complex)
    for k in range(order):
        acc = 0j
        quotient = np.empty(work.size - 1, dtype=complex)
        for i in range(work.size - 1, 0, -1):
            acc = acc * c + work[i]
            quotient[i - 1] = acc
        out[k] = acc * c + work[0]
        work = quotient
    return out


def _taylor_scale(a: np.ndarray, c: complex, order: int) -> np.ndarray:
    n = np.arange(a.size)
    mag = abs(c)
    return np.array(
        [sum(abs(a[i]) * math.comb(i, k) * mag ** (i - k) for i in n[k:]) for k in range(order)]
    )


def _multiple_root(a: np.ndarray, group: list[complex]) -> complex | None:
    """Common value of ``group`` if it is numerically one root of multiplicity len(group)."""
    m = len(group)
    c = complex(np.mean(group))
    # p^(m-1) has a simple root at an m-fold root of p
    for _ in range(NEWTON_STEPS):
        t = _taylor(a, c, m + 1)
        if t[m] == 0:
            break
        step = t[m - 1] / (m * t[m])
        c -= step
        if abs(step) <= 4 * np.finfo(float).eps * max(1.0, abs(c)):
            break
    if abs(c - np.mean(group)) > MULTIROOT_SEARCH * max(1.0, abs(c)):
        return None
    residual = np.abs(_taylor(a, c, m))
    if np.all(residual <= MULTIROOT_RTOL * _taylor_scale(a, c, m)):
        return c
    return None


def _merge_multiple_roots(a: np.ndarray, roots: list[complex]) -> list[complex]:
    groups: list[list[complex]] = []
    for z in roots:
        hits = [g for g in groups if any(chordal(w, z) < MULTIROOT_SEARCH for w in g)]
        merged = [z]
        for g in hits:
            merged += g
            groups.remove(g)
        groups.append(merged)
    out: list[complex] = []
    for group in groups:
        # peel off the outermost member until the rest is one multiple root
        while len(group) > 1:
            common = _multiple_root(a, group)
            if common is not None:
                out += [common] * len(group)
                group = []
                break
            centre = np.mean(group)
            far = max(range(len(group)), key=lambda i: abs(group[i] - centre))
            out.append(group.pop(far))
        out += group
    return out


def polynomial_roots(coeffs: Sequence[complex]) -> tuple[np.ndarray, int]:
    """Finite roots (with repetition) and the number of roots at infinity.

    Uses the companion matrix of the polynomial stripped of vanishing
    leading and trailing coefficients, then Newton-polishes each root on the
    trimmed polynomial. Tight groups of eigenvalues that are numerically one
    multiple root are replaced by that root.
    """
    a = np.asarray(coeffs, dtype=complex).reshape(-1)
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    if scale == 0.0 or not np.isfinite(scale):
        raise ZeroStateError("zero state")
    a = a / scale
    nonzero = np.flatnonzero(np.abs(a) > ZERO_COEFF_RTOL)
    low, high = int(nonzero[0]), int(nonzero[-1])
    at_infinity = a.size - 1 - high
    core = a[low : high + 1]
    roots = _merge_multiple_roots(core, [_polish(core, z) for z in _companion_roots(core)])
    roots = np.concatenate([np.zeros(low, dtype=complex), np.asarray(roots, dtype=complex)])
    return roots, at_infinity


def _cluster(roots: np.ndarray) -> list[tuple[complex, int]]:
    groups: list[list[complex]] = []
    for z in roots:
        for group in groups:
            if chordal(group[0], z) < CLUSTER_TOL:
                group.append(z)
                break
        else:
            groups.append([z])
    return [(complex(np.mean(g)), len(g)) for g in groups]


def solve_stars(coeffs: Sequence[complex], twice_j: int) -> StarSet:
    """Stars of the polynomial ``sum coeffs[n] z^n`` for a spin ``twice_j / 2``."""
    a = np.asarray(coeffs, dtype=complex).reshape(-1)
    if a.size != twice_j + 1:
        raise ValueError(f"expected {twice_j + 1} coefficients, got {a.size}")
    roots, at_infinity = polynomial_roots(a)
    stars: dict[tuple[float, float], int] = {}
    for z, mult in _cluster(roots):
        key = z_to_sphere(z)
        stars[key] = stars.get(key, 0) + mult
    if at_infinity:
        key = (math.pi, 0.0)
        stars[key] = stars.get(key, 0) + at_infinity
    return StarSet(tuple(Star(t, p, m) for (t, p), m in stars.items()), twice_j)


def state_stars(state: PureSpinState) -> StarSet:
    return solve_stars(star_polynomial(state), state.twice_j)


def reconstruct_coefficients(star_set: StarSet, degree_deficit: int | None = None) -> np.ndarray:
    """Monic-normalized coefficients whose roots are the given stars.

    ``degree_deficit`` south-pole stars are taken as roots at infinity; when
    omitted, every south-pole star is.
    """
    finite: list[complex] = []
    south = 0
    for star in star_set:
        if star.theta == math.pi:
            south += star.multiplicity
        else:
            finite += [sphere_to_z(star.theta, star.phi)] * star.multiplicity
    deficit = south if degree_deficit is None else degree_deficit
    if deficit > south:
        raise ValueError("degree_deficit exceeds the number of south-pole stars")
    # south-pole stars beyond the deficit are huge but finite roots
    finite += [sphere_to_z(math.nextafter(math.pi, 0), 0.0)] * (south - deficit)
    poly = np.array([1.0 + 0j])
    for z in finite:
        poly = np.convolve(poly, np.array([-z, 1.0]))
    out = np.zeros(star_set.twice_j + 1, dtype=complex)
    out[: poly.size] = poly
    return out


def proportionality_error(reference: Sequence[complex], candidate: Sequence[complex]) -> float:
    """Relative residual of ``reference`` after the best complex rescaling of ``candidate``."""
    ref = np.asarray(reference, dtype=complex)
    cand = np.asarray(candidate, dtype=complex)
    lam = np.vdot(cand, ref) / np.vdot(cand, cand)
    return float(np.linalg.norm(ref - lam * cand) / np.linalg.norm(ref))
