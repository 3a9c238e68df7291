"""Split an (s, 1/2) pure state into spin-(s+1/2) and spin-(s-1/2) parts.

Any such state is

    |psi> = c_upper |psi>_{s+1/2} + c_lower |psi>_{s-1/2}

with nonnegative weights, c_upper^2 + c_lower^2 = 1. The two components give
2s+1 and 2s-1 Majorana stars; the ratio c_lower / c_upper gives one more,
the pseudo-spin star, for 4s+1 in total.

Component amplitudes use the 0-based index of :class:`PureSpinState`. For
the lower component this means entry ``k`` holds the coefficient of the
coupled state with m = -(s - 1/2) + k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .majorana import PureSpinState, Star, StarSet, ZeroStateError, state_stars

NORM_ATOL = 1e-10
# weights at or below this are numerically zero: their stars are noise
WEIGHT_ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class MixedSpinState:
    """Amplitudes of |n>|down> (``d_down``) and |n>|up> (``d_up``), n = 0..2s."""

    twice_s: int
    d_down: np.ndarray
    d_up: np.ndarray

    def __post_init__(self):
        if self.twice_s < 1:
            raise ValueError("twice_s must be >= 1")
        for name in ("d_down", "d_up"):
            arr = np.asarray(getattr(self, name), dtype=complex).reshape(-1)
            if arr.size != self.twice_s + 1:
                raise ValueError(f"{name} needs {self.twice_s + 1} entries, got {arr.size}")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, arr)

    @classmethod
    def from_vector(cls, twice_s: int, vector) -> "MixedSpinState":
        """Build from the product-space vector ordered k = 2n + m_small."""
        vec = np.asarray(vector, dtype=complex).reshape(-1)
        if vec.size != 2 * (twice_s + 1):
            raise ValueError(f"vector needs {2 * (twice_s + 1)} entries, got {vec.size}")
        return cls(twice_s, vec[0::2], vec[1::2])

    @property
    def vector(self) -> np.ndarray:
        out = np.empty(2 * (self.twice_s + 1), dtype=complex)
        out[0::2] = self.d_down
        out[1::2] = self.d_up
        return out

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.vector))

    def normalized(self) -> "MixedSpinState":
        norm = self.norm
        if norm == 0.0:
            raise ZeroStateError("zero state")
        return MixedSpinState(self.twice_s, self.d_down / norm, self.d_up / norm)


@dataclass(frozen=True, eq=False)
class Decomposition:
    twice_s: int
    upper: PureSpinState
    lower: PureSpinState
    c_upper: float
    c_lower: float

    def __post_init__(self):
        if self.upper.twice_j != self.twice_s + 1 or self.lower.twice_j != self.twice_s - 1:
            raise ValueError("component spins do not match twice_s")
        if self.c_upper < 0 or self.c_lower < 0:
            raise ValueError("weights must be nonnegative")
        if abs(self.c_upper**2 + self.c_lower**2 - 1) > NORM_ATOL:
            raise ValueError("weights must satisfy c_upper^2 + c_lower^2 = 1")


@dataclass(frozen=True)
class FullRepresentation:
    """Upper, lower and pseudo-spin stars. A ``None`` set marks a component with zero weight."""

    twice_s: int
    upper_stars: StarSet | None
    lower_stars: StarSet | None
    pseudo_star: Star

    @property
    def total_multiplicity(self) -> int:
        total = self.pseudo_star.multiplicity
        for stars in (self.upper_stars, self.lower_stars):
            if stars is not None:
                total += stars.count
        return total


def _coupled_amplitudes(state: MixedSpinState) -> tuple[np.ndarray, np.ndarray]:
    ts = state.twice_s
    d0, d1 = state.d_down, state.d_up
    root = math.sqrt(ts + 1)
    n = np.arange(1, ts + 1)
    sq_n = np.sqrt(n)
    sq_rest = np.sqrt(ts - n + 1)
    upper = np.empty(ts + 2, dtype=complex)
    upper[0] = d0[0]
    upper[-1] = d1[ts]
    upper[1:-1] = (d1[n - 1] * sq_n + d0[n] * sq_rest) / root
    lower = (-d1[n - 1] * sq_rest + d0[n] * sq_n) / root
    return upper, lower


def _unit(vec: np.ndarray) -> tuple[np.ndarray, float]:
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        return np.zeros_like(vec), 0.0
    return vec / norm, norm


def decompose(state: MixedSpinState) -> Decomposition:
    norm = state.norm
    if norm == 0.0:
        raise ZeroStateError("zero state")
    if abs(norm - 1) > NORM_ATOL:
        raise ValueError(f"state is not normalized (norm {norm!r})")
    e, f = _coupled_amplitudes(state)
    upper, c_upper = _unit(e)
    lower, c_lower = _unit(f)
    ts = state.twice_s
    return Decomposition(
        ts,
        PureSpinState(ts + 1, upper),
        PureSpinState(ts - 1, lower),
        c_upper,
        c_lower,
    )


def compose(decomposition: Decomposition) -> MixedSpinState:
    """Inverse of :func:`decompose`, via the coupled-to-uncoupled relations."""
    ts = decomposition.twice_s
    e = decomposition.c_upper * decomposition.upper.amplitudes
    f = decomposition.c_lower * decomposition.lower.amplitudes
    d_down = np.empty(ts + 1, dtype=complex)
    d_up = np.empty(ts + 1, dtype=complex)
    d_down[0] = e[0]
    d_up[ts] = e[-1]
    for n in range(1, ts + 1):
        a = math.sqrt((ts - n + 1) / (ts + 1))
        b = math.sqrt(n / (ts + 1))
        d_down[n] = a * e[n] + b * f[n - 1]
        d_up[n - 1] = b * e[n] - a * f[n - 1]
    return MixedSpinState(ts, d_down, d_up)


def pseudo_spin_star(decomposition: Decomposition) -> Star:
    """Star of z = c_lower / c_upper; always on the phi = 0 meridian."""
    theta = 2 * math.atan2(decomposition.c_lower, decomposition.c_upper)
    return Star(theta, 0.0)


def full_representation(state: MixedSpinState) -> FullRepresentation:
    dec = decompose(state)
    upper = state_stars(dec.upper) if dec.c_upper > WEIGHT_ATOL else None
    lower = state_stars(dec.lower) if dec.c_lower > WEIGHT_ATOL else None
    return FullRepresentation(state.twice_s, upper, lower, pseudo_spin_star(dec))
