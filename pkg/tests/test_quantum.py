"""Quantum baseline, embeddings, Bloch parametrisation, projective updates."""

import math

import numpy as np
import pytest

from densitycube.cube import HermitianCube, ValidationError, inner, mix
from densitycube.quantum import (
    check_density_matrix,
    check_pure_state,
    check_unitary,
    dft_unitary,
    embed_bloch,
    embed_matrix,
    extract_bloch,
    extract_quantum_part,
    pauli_cubes,
    pure_density,
    quantum_luders,
)
from densitycube.sampling import random_density_matrix, random_pure_state
from densitycube.states import TRIPLE_MAGNITUDE, nonquantum_state


def test_embed_maximally_mixed_qutrit():
    cube = embed_matrix(np.eye(3) / 3.0)
    assert np.allclose(cube.diag, 1.0 / 3.0, atol=0.0)
    assert not cube.pair_re.any() and not cube.pair_im.any() and not cube.triple.any()


def test_embed_basis_projector_gives_basis_cube():
    assert embed_matrix(pure_density([1.0, 0.0, 0.0])) == HermitianCube.basis_state(3, 1)


def test_embedding_is_an_isometry(rng):
    for _ in range(100):
        a = random_density_matrix(3, rng)
        b = random_density_matrix(3, rng)
        lhs = np.trace(a.conj().T @ b).real
        assert inner(embed_matrix(a), embed_matrix(b)) == pytest.approx(lhs, abs=1e-10)


def test_extract_nonquantum_state_quantum_part():
    mat, triples = extract_quantum_part(nonquantum_state(1))
    assert np.allclose(mat, 0.5 * (np.eye(3) - pure_density([1, 0, 0])), atol=1e-15)
    assert triples.shape == (1,)
    assert triples[0] == pytest.approx(TRIPLE_MAGNITUDE, abs=0.0)


def test_extract_basis_cube():
    mat, triples = extract_quantum_part(HermitianCube.basis_state(3, 2))
    assert np.allclose(mat, pure_density([0, 1, 0]), atol=0.0)
    assert triples[0] == 0.0


def test_embed_then_extract_roundtrip(rng):
    for _ in range(50):
        rho = random_density_matrix(3, rng)
        mat, triples = extract_quantum_part(embed_matrix(rho))
        assert np.allclose(mat, rho, atol=1e-14)
        assert triples[0] == 0.0


def test_bloch_poles_and_axes():
    north = embed_bloch([0.0, 0.0, 1.0])
    assert north == HermitianCube.basis_state(2, 1)
    x_axis = embed_bloch([1.0, 0.0, 0.0])
    assert x_axis.pair_re[0] == pytest.approx(1.0 / math.sqrt(6.0), abs=0.0)
    assert x_axis.diag[0] == 0.5
    assert inner(x_axis, x_axis) == pytest.approx(1.0, abs=1e-12)


def test_bloch_centre_has_half_norm():
    centre = embed_bloch([0.0, 0.0, 0.0])
    assert inner(centre, centre) == pytest.approx(0.5, abs=1e-12)


def test_bloch_purity_tracks_radius(rng):
    for _ in range(50):
        v = rng.standard_normal(3)
        v *= rng.uniform(0.0, 1.0) / np.linalg.norm(v)
        cube = embed_bloch(v)
        assert inner(cube, cube) == pytest.approx(
            0.5 + 0.5 * float(v @ v), abs=1e-12
        )
        assert np.allclose(extract_bloch(cube), v, atol=1e-13)


def test_bloch_rejects_outside_ball():
    with pytest.raises(ValidationError):
        embed_bloch([1.0, 1.0, 0.0])


def test_pauli_cube_overlaps():
    s0, s1, s2, s3 = pauli_cubes()
    for a, ca in enumerate((s1, s2, s3)):
        for b, cb in enumerate((s1, s2, s3)):
            assert inner(ca, cb) == pytest.approx(2.0 if a == b else 0.0, abs=1e-12)
    assert inner(s0, s0) == pytest.approx(2.0, abs=0.0)


def test_pauli_decomposition_matches_bloch_embedding(rng):
    s0, s1, s2, s3 = pauli_cubes()
    for _ in range(20):
        v = rng.standard_normal(3)
        v /= np.linalg.norm(v)
        combo = mix([(1.0, embed_bloch(v))])  # normalised reference
        direct = HermitianCube(
            2,
            (s0.diag + v[0] * s1.diag + v[1] * s2.diag + v[2] * s3.diag) / 2.0,
            (s0.pair_re + v[0] * s1.pair_re + v[1] * s2.pair_re + v[2] * s3.pair_re) / 2.0,
            (s0.pair_im + v[0] * s1.pair_im + v[1] * s2.pair_im + v[2] * s3.pair_im) / 2.0,
            np.zeros(0, dtype=complex),
        )
        assert direct.allclose(combo, 1e-14)


def test_quantum_luders_diagonal_case():
    p, post = quantum_luders(np.eye(3) / 3.0, {2, 3})
    assert p == pytest.approx(2.0 / 3.0, abs=1e-15)
    assert np.allclose(post, np.diag([0.0, 0.5, 0.5]), atol=1e-15)


def test_quantum_luders_absorbed_branch():
    p, post = quantum_luders(pure_density([1, 0, 0]), {2, 3})
    assert p == 0.0 and post is None


def test_quantum_luders_projects_superposition():
    psi = np.array([1.0, 1.0, 1.0]) / math.sqrt(3.0)
    p, post = quantum_luders(pure_density(psi), {1, 2})
    assert p == pytest.approx(2.0 / 3.0, abs=1e-12)
    expected = pure_density(np.array([1.0, 1.0, 0.0]) / math.sqrt(2.0))
    assert np.allclose(post, expected, atol=1e-12)


def test_quantum_luders_full_block_is_identity(rng):
    rho = random_density_matrix(3, rng)
    p, post = quantum_luders(rho, {1, 2, 3})
    assert p == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(post, rho, atol=1e-14)


def test_quantum_luders_rejects_empty_block():
    with pytest.raises(ValidationError):
        quantum_luders(np.eye(3) / 3.0, set())


def test_dft_two_levels_is_balanced():
    u = dft_unitary(2)
    assert np.allclose(np.abs(u) ** 2, 0.5, atol=1e-15)


def test_dft_three_levels_is_unitary():
    u = dft_unitary(3)
    assert np.max(np.abs(u.conj().T @ u - np.eye(3))) < 1e-12


def test_dft_applied_twice_permutes_basis_states():
    u = dft_unitary(3)
    out = u @ u @ np.array([1.0, 0.0, 0.0])
    magnitudes = np.sort(np.abs(out))
    assert np.allclose(magnitudes, [0.0, 0.0, 1.0], atol=1e-12)


def test_validators_reject_bad_inputs(rng):
    with pytest.raises(ValidationError):
        check_density_matrix(np.array([[0.5, 1.0], [0.0, 0.5]]))  # not Hermitian
    with pytest.raises(ValidationError):
        check_density_matrix(np.diag([1.5, -0.5]))  # negative eigenvalue
    with pytest.raises(ValidationError):
        check_pure_state([1.0, 1.0])
    with pytest.raises(ValidationError):
        check_unitary(np.ones((2, 2)))
    check_unitary(dft_unitary(4))
    check_pure_state(random_pure_state(3, rng))
