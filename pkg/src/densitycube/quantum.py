"""Quantum baseline objects and the quantum <-> cube embeddings.

Density matrices, pure state vectors and unitaries are plain numpy arrays
with validator functions; the cube embeddings live here because they relate
the two state spaces.  Two-level cubes are parametrised by a Bloch vector,
with four "Pauli cubes" spanning the Hermitian two-level space.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .cube import (
    STATE_TOL,
    HermitianCube,
    ValidationError,
    pair_keys,
    triple_keys,
)
from .jsonio import complex_pair, pair_complex

HERMITICITY_TOL = 1e-12
UNITARITY_TOL = 1e-10

_SQRT_2_3 = math.sqrt(2.0 / 3.0)
_SQRT6 = math.sqrt(6.0)


# -- validators --------------------------------------------------------------


def check_density_matrix(mat: np.ndarray, tol: float = STATE_TOL) -> np.ndarray:
    """Validate hermiticity, unit trace and positive spectrum; return as array."""
    rho = np.asarray(mat, dtype=np.complex128)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValidationError(f"density matrix must be square, got shape {rho.shape}")
    if not np.all(np.isfinite(rho.real)) or not np.all(np.isfinite(rho.imag)):
        raise ValidationError("non-finite entry in density matrix")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITICITY_TOL:
        raise ValidationError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > tol:
        raise ValidationError(f"density matrix trace is {np.trace(rho).real!r}, expected 1")
    eigs = np.linalg.eigvalsh(rho)
    if eigs.min() < -tol:
        raise ValidationError(f"density matrix has negative eigenvalue {eigs.min()!r}")
    return rho


def check_pure_state(vec: Sequence[complex], tol: float = STATE_TOL) -> np.ndarray:
    psi = np.asarray(vec, dtype=np.complex128).reshape(-1)
    norm = float(np.vdot(psi, psi).real)
    if abs(norm - 1.0) > tol:
        raise ValidationError(f"state vector norm^2 is {norm!r}, expected 1")
    return psi


def check_unitary(mat: np.ndarray, tol: float = UNITARITY_TOL) -> np.ndarray:
    u = np.asarray(mat, dtype=np.complex128)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValidationError(f"unitary must be square, got shape {u.shape}")
    dev = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
    if dev > tol:
        raise ValidationError(f"matrix deviates from unitarity by {dev:.3e}")
    return u


def pure_density(psi: Sequence[complex]) -> np.ndarray:
    """Rank-1 density matrix |psi><psi|."""
    v = check_pure_state(psi)
    return np.outer(v, v.conj())


# -- quantum <-> cube embedding ----------------------------------------------


def embed_matrix(rho: np.ndarray) -> HermitianCube:
    """Map an N-level density matrix to the cube with vanishing triple elements.

    diag carries the matrix diagonal; for i < j the pair elements carry
    sqrt(2/3) * Re rho[i,j] and sqrt(2/3) * Im rho[i,j].  The map is an
    isometry for the contraction inner product.
    """
    rho = check_density_matrix(rho)
    n = rho.shape[0]
    diag = rho.diagonal().real.copy()
    pre = np.array([_SQRT_2_3 * rho[i - 1, j - 1].real for i, j in pair_keys(n)])
    pim = np.array([_SQRT_2_3 * rho[i - 1, j - 1].imag for i, j in pair_keys(n)])
    return HermitianCube(n, diag, pre, pim, np.zeros(len(triple_keys(n)), dtype=np.complex128))


def extract_quantum_part(cube: HermitianCube) -> tuple[np.ndarray, np.ndarray]:
    """Invert the embedding: (matrix, triple elements verbatim).

    Extraction is total; positivity of the returned matrix is for the caller
    to check (``check_density_matrix``), not enforced here.
    """
    n = cube.levels
    mat = np.zeros((n, n), dtype=np.complex128)
    np.fill_diagonal(mat, cube.diag)
    for pos, (i, j) in enumerate(pair_keys(n)):
        val = (cube.pair_re[pos] + 1j * cube.pair_im[pos]) / _SQRT_2_3
        mat[i - 1, j - 1] = val
        mat[j - 1, i - 1] = val.conjugate()
    return mat, cube.triple.copy()


# -- two-level systems: Bloch ball and Pauli cubes ----------------------------


def embed_bloch(v: Sequence[float], tol: float = STATE_TOL) -> HermitianCube:
    """Two-level cube for Bloch vector (x1, x2, x3); pure iff |v| = 1."""
    x1, x2, x3 = (float(c) for c in v)
    norm2 = x1 * x1 + x2 * x2 + x3 * x3
    if norm2 > 1.0 + tol:
        raise ValidationError(f"Bloch vector has norm^2 {norm2!r} > 1")
    return HermitianCube.from_elements(
        2,
        [(1.0 + x3) / 2.0, (1.0 - x3) / 2.0],
        pairs={(1, 2): (x1 / _SQRT6, x2 / _SQRT6)},
    )


def extract_bloch(cube: HermitianCube) -> np.ndarray:
    """Inverse of embed_bloch for two-level cubes."""
    if cube.levels != 2:
        raise ValidationError(f"Bloch extraction needs a 2-level cube, got {cube.levels}")
    return np.array(
        [
            _SQRT6 * cube.pair_re[0],
            _SQRT6 * cube.pair_im[0],
            2.0 * cube.diag[0] - 1.0,
        ]
    )


def pauli_cubes() -> tuple[HermitianCube, HermitianCube, HermitianCube, HermitianCube]:
    """The four two-level basis cubes (s0, s1, s2, s3).

    s0 has unit diagonal, s3 diagonal (1, -1), and s1/s2 put sqrt(2/3) on the
    two pair elements.  They satisfy (s_a, s_b) = 2 delta_ab, and every
    two-level cube is (s0 + x . s) / 2 for a Bloch vector x.
    """
    s0 = HermitianCube.from_elements(2, [1.0, 1.0])
    s1 = HermitianCube(2, [0.0, 0.0], [_SQRT_2_3], [0.0], np.zeros(0, dtype=np.complex128))
    s2 = HermitianCube(2, [0.0, 0.0], [0.0], [_SQRT_2_3], np.zeros(0, dtype=np.complex128))
    s3 = HermitianCube.from_elements(2, [1.0, -1.0])
    return s0, s1, s2, s3


# -- projective dynamics -------------------------------------------------------


def projector(dim: int, block: Iterable[int]) -> np.ndarray:
    """Diagonal projector onto the span of basis vectors in ``block`` (1-based)."""
    block = frozenset(int(b) for b in block)
    if not block:
        raise ValidationError("projector block must be nonempty")
    if not block <= set(range(1, dim + 1)):
        raise ValidationError(f"block {sorted(block)} outside 1..{dim}")
    p = np.zeros((dim, dim), dtype=np.complex128)
    for b in block:
        p[b - 1, b - 1] = 1.0
    return p


def quantum_luders(
    rho: np.ndarray, block: Iterable[int], tol: float = STATE_TOL
) -> tuple[float, np.ndarray | None]:
    """Projective update rho -> P rho P / p with p = Tr(P rho).

    Returns (p, post_state); post_state is None when the branch is absorbed
    (p <= tol).
    """
    rho = np.asarray(rho, dtype=np.complex128)
    p_mat = projector(rho.shape[0], block)
    prob = float(np.trace(p_mat @ rho).real)
    if prob <= tol:
        return max(prob, 0.0), None
    return prob, (p_mat @ rho @ p_mat) / prob


def dft_unitary(dim: int) -> np.ndarray:
    """Discrete-Fourier beam splitter U[j,k] = exp(2 pi i j k / N) / sqrt(N)."""
    if dim < 2:
        raise ValidationError(f"dimension must be >= 2, got {dim}")
    j, k = np.meshgrid(np.arange(dim), np.arange(dim), indexing="ij")
    return np.exp(2j * np.pi * j * k / dim) / math.sqrt(dim)


# -- serialization -------------------------------------------------------------


def matrix_to_dict(mat: np.ndarray) -> dict:
    """JSON form {dim, entries: flat row-major [re, im] pairs}."""
    m = np.asarray(mat, dtype=np.complex128)
    return {"dim": int(m.shape[0]), "entries": [complex_pair(z) for z in m.reshape(-1)]}


def matrix_from_dict(data: dict) -> np.ndarray:
    try:
        dim = int(data["dim"])
        entries = [pair_complex(p) for p in data["entries"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed matrix record: {exc}") from exc
    if len(entries) != dim * dim:
        raise ValidationError(f"expected {dim * dim} entries, got {len(entries)}")
    return np.array(entries, dtype=np.complex128).reshape(dim, dim)
