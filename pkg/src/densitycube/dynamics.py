"""Dynamics on the invariant subspace of diagonal-plus-triple cubes.

Three-level cubes whose pair elements vanish live in a five-dimensional
complex span: three diagonal directions plus the two (individually
non-Hermitian) cyclic tensors that carry the triple element and its
conjugate.  A cube with diagonal d and triple element z has coordinates
(d1, d2, d3, sqrt3 * z, sqrt3 * conj(z)).

The built-in transform T is a 5x5 unitary involution on those coordinates
mapping each basis cube e_n onto the orthonormal non-quantum state rho_n.
It has no counterpart among three-level unitaries: any matrix with the same
transition profile (|U_ij|^2 = 1/2 off the diagonal, 0 on it) has column
pairs overlapping with modulus exactly 1/2, whatever the phases.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from .cube import (
    ALGEBRA_TOL,
    STATE_TOL,
    HermitianCube,
    ValidationError,
    expand_full,
)
from .jsonio import complex_pair, pair_complex
from .states import OMEGA

SPAN_DIM = 5
COEFF_TOL = 1e-10
SPAN_RESIDUAL_TOL = 1e-9

_SQRT3 = math.sqrt(3.0)


def _build_subspace_basis() -> np.ndarray:
    basis = np.zeros((SPAN_DIM, 3, 3, 3), dtype=np.complex128)
    for n in range(3):
        basis[n, n, n, n] = 1.0
    w = 1.0 / _SQRT3
    for (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        basis[3, i, j, k] = w  # cyclic positions
        basis[4, k, j, i] = w  # anti-cyclic positions
    return basis


_SUBSPACE = _build_subspace_basis()
_SUBSPACE.setflags(write=False)


def subspace_basis() -> np.ndarray:
    """The five orthonormal span tensors, shape (5, 3, 3, 3), read-only."""
    return _SUBSPACE


def basis_coefficients(n: int) -> np.ndarray:
    """Span coordinates of the basis cube e_n."""
    c = np.zeros(SPAN_DIM, dtype=np.complex128)
    c[n - 1] = 1.0
    return c


def nonquantum_coefficients(n: int) -> np.ndarray:
    """Span coordinates of rho_n: all 1/2 except a zero at slot n, phases
    w / w* in the two triple slots for n = 2, 3."""
    if n not in (1, 2, 3):
        raise ValidationError(f"index must be 1, 2 or 3, got {n}")
    phase = {1: complex(1.0, 0.0), 2: OMEGA, 3: OMEGA.conjugate()}[n]
    c = np.full(SPAN_DIM, 0.5, dtype=np.complex128)
    c[n - 1] = 0.0
    c[3] = phase / 2.0
    c[4] = phase.conjugate() / 2.0
    return c


def standard_transform() -> np.ndarray:
    """The built-in 5x5 unitary involution with T e_n = rho_n."""
    t = np.zeros((SPAN_DIM, SPAN_DIM), dtype=np.complex128)
    for n in (1, 2, 3):
        t[:, n - 1] = nonquantum_coefficients(n)
    t[:, 3] = 0.5 * np.array([1.0, OMEGA.conjugate(), OMEGA, 1.0, 0.0])
    t[:, 4] = 0.5 * np.array([1.0, OMEGA, OMEGA.conjugate(), 0.0, 1.0])
    t.setflags(write=False)
    return t


def project(cube: HermitianCube) -> tuple[np.ndarray, float]:
    """Span coordinates of a three-level cube plus the out-of-span residual.

    Coordinates are contractions against the span tensors; the residual is
    the Frobenius norm of the cube minus its reconstruction (pair elements
    are the only possible out-of-span content).
    """
    if cube.levels != 3:
        raise ValidationError(f"span projection needs a 3-level cube, got {cube.levels}")
    full = expand_full(cube)
    coeffs = np.array([np.vdot(_SUBSPACE[a], full) for a in range(SPAN_DIM)])
    residual = float(np.linalg.norm(full - np.tensordot(coeffs, _SUBSPACE, axes=1)))
    return coeffs, residual


def coefficients_represent_cube(c: Sequence[complex], tol: float = COEFF_TOL) -> bool:
    """Whether coordinates describe a Hermitian cube: real diagonal slots and
    conjugate-paired triple slots."""
    c = np.asarray(c, dtype=np.complex128).reshape(-1)
    if c.size != SPAN_DIM:
        return False
    return bool(
        np.max(np.abs(c[:3].imag)) <= tol and abs(c[4] - c[3].conjugate()) <= tol
    )


def reconstruct(c: Sequence[complex], tol: float = COEFF_TOL) -> HermitianCube:
    """Cube with diagonal c[0:3] and triple element c[3] / sqrt3.

    Raises when the coordinates do not describe a Hermitian cube.
    """
    c = np.asarray(c, dtype=np.complex128).reshape(-1)
    if c.size != SPAN_DIM:
        raise ValidationError(f"expected {SPAN_DIM} coordinates, got {c.size}")
    if not coefficients_represent_cube(c, tol):
        raise ValidationError(
            "coordinates do not describe a Hermitian cube "
            "(diagonal slots must be real, triple slots conjugate pairs)"
        )
    return HermitianCube.from_elements(
        3, c[:3].real, triples={(1, 2, 3): complex(c[3]) / _SQRT3}
    )


def apply_transform(
    cube: HermitianCube,
    matrix: np.ndarray | None = None,
    span_tol: float = SPAN_RESIDUAL_TOL,
) -> HermitianCube:
    """Apply a span transform to a cube lying in the invariant subspace.

    Cubes with pair content are rejected: the transform is only defined on
    the span, and extending it silently would contaminate results.
    """
    t = standard_transform() if matrix is None else np.asarray(matrix, dtype=np.complex128)
    coeffs, residual = project(cube)
    if residual >= span_tol:
        raise ValidationError(
            f"cube lies outside the invariant subspace (residual {residual:.3e}); "
            "the transform is undefined on pair elements"
        )
    out = reconstruct(t @ coeffs)
    if abs(out.trace() - cube.trace()) > STATE_TOL:
        raise ValidationError(
            f"transform does not preserve the outcome-weight sum "
            f"({cube.trace()!r} -> {out.trace()!r})"
        )
    return out


def verify_transform_columns(
    a: Sequence[complex], b: Sequence[complex], tol: float = COEFF_TOL
) -> bool:
    """Check candidate completion columns against the orthogonality system.

    The six linear constraints make each candidate orthogonal to the three
    fixed columns of the transform template; the final condition is mutual
    orthogonality sum_i conj(a_i) b_i = 0.
    """
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    b = np.asarray(b, dtype=np.complex128).reshape(-1)
    if a.size != SPAN_DIM or b.size != SPAN_DIM:
        raise ValidationError("candidate columns must have five components")
    w = OMEGA
    constraints = [
        a[1] + a[2] + a[3] + a[4],
        a[0] + a[2] + w.conjugate() * a[3] + w * a[4],
        a[0] + a[1] + w * a[3] + w.conjugate() * a[4],
        b[1] + b[2] + b[3] + b[4],
        b[0] + b[2] + w.conjugate() * b[3] + w * b[4],
        b[0] + b[1] + w * b[3] + w.conjugate() * b[4],
        np.vdot(a, b),
    ]
    return all(abs(c) <= tol for c in constraints)


def verify_transform(matrix: np.ndarray, tol: float = ALGEBRA_TOL) -> np.ndarray:
    """Validate a candidate 5x5 span transform: unitary, an involution, and
    mapping each basis cube onto the matching non-quantum basis state."""
    t = np.asarray(matrix, dtype=np.complex128)
    if t.shape != (SPAN_DIM, SPAN_DIM):
        raise ValidationError(f"transform must be 5x5, got shape {t.shape}")
    eye = np.eye(SPAN_DIM)
    dev_u = float(np.max(np.abs(t.conj().T @ t - eye)))
    if dev_u > tol:
        raise ValidationError(f"transform deviates from unitarity by {dev_u:.3e}")
    dev_i = float(np.max(np.abs(t @ t - eye)))
    if dev_i > tol:
        raise ValidationError(f"transform deviates from an involution by {dev_i:.3e}")
    for n in (1, 2, 3):
        dev_b = float(np.max(np.abs(t @ basis_coefficients(n) - nonquantum_coefficients(n))))
        if dev_b > tol:
            raise ValidationError(
                f"transform maps e_{n} off the non-quantum basis by {dev_b:.3e}"
            )
    return t


class OverlapScan(NamedTuple):
    """Extremes of column-pair overlap moduli across sampled phase matrices."""

    min_overlap: float
    max_overlap: float
    samples: int


def qutrit_obstruction_scan(samples: int, seed: int | None = None) -> OverlapScan:
    """Scan phase assignments for a 3x3 matrix with |U_ij|^2 = (1-delta_ij)/2.

    The all-zero phase assignment is always included as the first sample; the
    rest draw uniform phases.  Each column pair shares exactly one support
    row, so its overlap modulus is 1/2 regardless of phases: no unitary (and
    hence no three-level quantum evolution) realises this transition profile.
    """
    if samples < 1:
        raise ValidationError(f"samples must be >= 1, got {samples}")
    rng = np.random.Generator(np.random.PCG64(seed))
    phases = rng.uniform(0.0, 2.0 * np.pi, size=(samples, 3, 3))
    phases[0] = 0.0
    mats = np.exp(1j * phases) / math.sqrt(2.0)
    idx = np.arange(3)
    mats[:, idx, idx] = 0.0
    overlaps = []
    for a in range(3):
        for b in range(a + 1, 3):
            overlaps.append(
                np.abs(np.einsum("sk,sk->s", mats[:, :, a].conj(), mats[:, :, b]))
            )
    stacked = np.concatenate(overlaps)
    return OverlapScan(float(stacked.min()), float(stacked.max()), samples)


# -- serialization -------------------------------------------------------------


def transform_to_dict(matrix: np.ndarray) -> dict:
    m = np.asarray(matrix, dtype=np.complex128)
    return {"rows": [[complex_pair(z) for z in row] for row in m]}


def transform_from_dict(data: dict, validate: bool = True) -> np.ndarray:
    try:
        rows = [[pair_complex(p) for p in row] for row in data["rows"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed transform record: {exc}") from exc
    t = np.array(rows, dtype=np.complex128)
    if validate:
        verify_transform(t)
    return t
