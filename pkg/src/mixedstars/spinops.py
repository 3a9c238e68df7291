"""Angular-momentum operators for a spin-s coupled to a spin-1/2.

Spins are carried as the integer ``twice_s`` (= 2s). The single-spin basis
index ``n = 0..2s`` labels the state with magnetic number ``m = -s + n``.

The product space of spin-s and spin-1/2 is enumerated as ``k = 2n + m_small``
with ``m_small = 0`` (down) or ``1`` (up). With this ordering the
two-dimensional J^2-invariant subspaces

    V_n = span{|n-1>|up>, |n>|down>},  n = 1..2s

occupy the contiguous index pairs ``(2n-1, 2n)``, and the one-dimensional
subspaces |0>|down> and |2s>|up> sit at the first and last index.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

HERMITIAN_ATOL = 1e-12


def _check_twice_s(twice_s: int, minimum: int = 0) -> int:
    if int(twice_s) != twice_s or twice_s < minimum:
        raise ValueError(f"twice_s must be an integer >= {minimum}, got {twice_s!r}")
    return int(twice_s)


def ladder_operators(twice_s: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(S_plus, S_minus, S_z)`` for spin ``twice_s / 2``.

    S_plus|n> = sqrt((n+1)(2s-n)) |n+1>, S_z|n> = (-s+n)|n>, and
    S_minus is the conjugate transpose of S_plus.
    """
    twice_s = _check_twice_s(twice_s)
    dim = twice_s + 1
    n = np.arange(dim - 1)
    s_plus = np.zeros((dim, dim), dtype=complex)
    s_plus[n + 1, n] = np.sqrt((n + 1) * (twice_s - n))
    s_minus = s_plus.conj().T.copy()
    s_z = np.diag(np.arange(dim) - twice_s / 2).astype(complex)
    return s_plus, s_minus, s_z


def cartesian_operators(twice_s: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(S_x, S_y, S_z)`` for spin ``twice_s / 2``."""
    s_plus, s_minus, s_z = ladder_operators(twice_s)
    return (s_plus + s_minus) / 2, (s_plus - s_minus) / 2j, s_z


def product_dim(twice_s: int) -> int:
    return 2 * (twice_s + 1)


def total_jz(twice_s: int) -> np.ndarray:
    """Total J_z = S_z + sigma_z/2 on the product space."""
    _, _, s_z = ladder_operators(twice_s)
    _, _, small_z = ladder_operators(1)
    return np.kron(s_z, np.eye(2)) + np.kron(np.eye(twice_s + 1), small_z)


def j_squared(twice_s: int) -> np.ndarray:
    """Total J^2 on the (s, 1/2) product space.

    Assembled term by term as S^2 + sigma^2/4 + S_z sigma_z + S_+ sigma_- + S_- sigma_+,
    where sigma_+ = |up><down| is the spin-1/2 raising operator.
    """
    twice_s = _check_twice_s(twice_s, 1)
    s = twice_s / 2
    dim = twice_s + 1
    s_plus, s_minus, s_z = ladder_operators(twice_s)
    sigma_plus = np.array([[0, 0], [1, 0]], dtype=complex)
    sigma_minus = sigma_plus.T.copy()
    sigma_z = np.diag([-1.0, 1.0]).astype(complex)

    eye_big = np.eye(dim)
    eye_small = np.eye(2)
    j2 = (s * (s + 1) + 0.75) * np.kron(eye_big, eye_small)
    j2 = j2 + np.kron(s_z, sigma_z)
    j2 = j2 + np.kron(s_plus, sigma_minus) + np.kron(s_minus, sigma_plus)
    return j2


def sector_eigenvalues(twice_s: int) -> tuple[float, float]:
    """``(j+(j+ + 1), j-(j- + 1))`` with j+- = s +- 1/2."""
    j_up = (twice_s + 1) / 2
    j_low = (twice_s - 1) / 2
    return j_up * (j_up + 1), j_low * (j_low + 1)


def block_matrices(twice_s: int) -> tuple[list[np.ndarray], tuple[float, float]]:
    """Invariant-subspace form of J^2.

    Returns the 2x2 blocks A_n for n = 1..2s, in the basis
    (|n>|down>, |n-1>|up>), and the scalar value J^2 takes on the two
    one-dimensional subspaces V_0 and V_{2s+1}.
    """
    twice_s = _check_twice_s(twice_s, 1)
    s = twice_s / 2
    sigma_x = np.array([[0.0, 1.0], [1.0, 0.0]])
    sigma_z = np.diag([1.0, -1.0])
    blocks = []
    for n in range(1, twice_s + 1):
        a_n = (
            (s * s + s + 0.25) * np.eye(2)
            + (s - n + 0.5) * sigma_z
            + np.sqrt(n * (twice_s - n + 1)) * sigma_x
        )
        blocks.append(a_n)
    edge = s * s + 2 * s + 0.75
    return blocks, (edge, edge)


def assemble_blocks(twice_s: int) -> np.ndarray:
    """Direct sum of the A_n blocks placed back on the product-space ordering."""
    blocks, (first, last) = block_matrices(twice_s)
    dim = product_dim(twice_s)
    out = np.zeros((dim, dim))
    out[0, 0] = first
    out[-1, -1] = last
    for n, a_n in enumerate(blocks, start=1):
        # block basis is (|n>|down>, |n-1>|up>) = indices (2n, 2n-1)
        idx = [2 * n, 2 * n - 1]
        out[np.ix_(idx, idx)] = a_n
    return out


@dataclass(frozen=True)
class CouplingTransform:
    """Real orthogonal map from uncoupled to coupled amplitudes.

    ``matrix[r]`` is coupled basis vector ``coupled_labels[r]`` written in the
    uncoupled basis ``uncoupled_labels``, so ``matrix @ D`` gives coupled
    amplitudes. Coupled rows follow the block order: the lowest upper-sector
    state, then (upper n, lower n) for n = 1..2s, then the highest
    upper-sector state.
    """

    twice_s: int
    matrix: np.ndarray
    uncoupled_labels: tuple[tuple[int, int], ...] = field(repr=False)
    coupled_labels: tuple[tuple[str, int], ...] = field(repr=False)

    @property
    def basis_order(self) -> dict[str, tuple]:
        return {"uncoupled": self.uncoupled_labels, "coupled": self.coupled_labels}

    def upper_rows(self) -> list[int]:
        return [r for r, (sector, _) in enumerate(self.coupled_labels) if sector == "upper"]

    def lower_rows(self) -> list[int]:
        return [r for r, (sector, _) in enumerate(self.coupled_labels) if sector == "lower"]


def coupling_transform(twice_s: int) -> CouplingTransform:
    """Clebsch-Gordan transform for s (x) 1/2.

    Uncoupled labels are ``(n, m_small)``; coupled labels are
    ``("upper", n)`` for |n>_{s+1/2}, n = 0..2s+1, and ``("lower", n)`` for
    |n>_{s-1/2}, n = 1..2s (m = -s + n - 1/2).
    """
    twice_s = _check_twice_s(twice_s, 1)
    dim = product_dim(twice_s)
    norm = twice_s + 1
    u = np.zeros((dim, dim))
    labels: list[tuple[str, int]] = [("upper", 0)]
    u[0, 0] = 1.0
    for n in range(1, twice_s + 1):
        i_down, i_up = 2 * n, 2 * n - 1
        w_down = np.sqrt((twice_s - n + 1) / norm)
        w_up = np.sqrt(n / norm)
        u[2 * n - 1, i_down] = w_down
        u[2 * n - 1, i_up] = w_up
        u[2 * n, i_down] = w_up
        u[2 * n, i_up] = -w_down
        labels += [("upper", n), ("lower", n)]
    u[-1, -1] = 1.0
    labels.append(("upper", twice_s + 1))
    uncoupled = tuple((k // 2, k % 2) for k in range(dim))
    return CouplingTransform(twice_s, u, uncoupled, tuple(labels))


def is_hermitian(matrix: np.ndarray, atol: float = HERMITIAN_ATOL) -> bool:
    return bool(np.all(np.isfinite(matrix)) and np.allclose(matrix, matrix.conj().T, rtol=0, atol=atol))
