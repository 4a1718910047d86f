"""Seeded random instance generators for sweeps, checks and tests.

All randomness flows through numpy's PCG64 bit generator so that every
sampled experiment is reproducible bit-exactly from (seed, version).
"""

from __future__ import annotations

import numpy as np

from .cube import HermitianCube, mix, pair_keys, triple_keys
from .states import nonquantum_basis, standard_basis


def generator(seed: int | None | np.random.Generator) -> np.random.Generator:
    """A PCG64-backed generator; passes through an existing generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def spawn_seeds(seed: int | None, count: int) -> list[np.random.SeedSequence]:
    """Independent child seed sequences for per-trial generators."""
    return np.random.SeedSequence(seed).spawn(count)


def random_pure_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return vec / np.linalg.norm(vec)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR with phase normalisation."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def random_density_matrix(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_probability_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    return rng.dirichlet(np.ones(dim))


def random_stochastic_matrix(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Column-stochastic matrix (each column a point on the simplex)."""
    return rng.dirichlet(np.ones(dim), size=dim).T


def random_span_state(rng: np.random.Generator) -> HermitianCube:
    """Random convex mixture of the six known pure states of the invariant
    subspace (basis cubes and the non-quantum triple); always a valid state."""
    members = list(standard_basis(3).members) + list(nonquantum_basis().members)
    weights = rng.dirichlet(np.ones(len(members)))
    return mix(list(zip(weights, members)))


def random_structural_cube(
    levels: int,
    rng: np.random.Generator,
    pair_scale: float = 0.1,
    triple_scale: float = 0.1,
) -> HermitianCube:
    """Random normalised cube for algebraic tests (structural validity only;
    no claim about mutual positivity against other states)."""
    diag = rng.dirichlet(np.ones(levels))
    n_pairs = len(pair_keys(levels))
    n_triples = len(triple_keys(levels))
    pre = rng.normal(scale=pair_scale, size=n_pairs)
    pim = rng.normal(scale=pair_scale, size=n_pairs)
    tri = triple_scale * (
        rng.standard_normal(n_triples) + 1j * rng.standard_normal(n_triples)
    )
    return HermitianCube(levels, diag, pre, pim, tri)
