"""Shared strategies, fixtures and independent oracles for the test suite."""

from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from densitycube.cube import HermitianCube, pair_keys, triple_keys

settings.register_profile(
    "suite", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")

finite = st.floats(
    min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False, width=64
)


@st.composite
def cubes(draw, levels: int | None = None, normalized: bool = True):
    """Structurally valid cubes; normalised ones have a simplex diagonal."""
    n = levels if levels is not None else draw(st.integers(min_value=2, max_value=5))
    raw = draw(
        st.lists(
            st.floats(min_value=0.01, max_value=1.0, allow_nan=False),
            min_size=n,
            max_size=n,
        )
    )
    diag = np.asarray(raw)
    if normalized:
        diag = diag / diag.sum()
    n_pairs = len(pair_keys(n))
    n_triples = len(triple_keys(n))
    pre = np.asarray(draw(st.lists(finite, min_size=n_pairs, max_size=n_pairs)))
    pim = np.asarray(draw(st.lists(finite, min_size=n_pairs, max_size=n_pairs)))
    tre = np.asarray(draw(st.lists(finite, min_size=n_triples, max_size=n_triples)))
    tim = np.asarray(draw(st.lists(finite, min_size=n_triples, max_size=n_triples)))
    return HermitianCube(n, diag, 0.3 * pre, 0.3 * pim, 0.3 * (tre + 1j * tim))


def _parity(perm: tuple[int, ...]) -> int:
    inversions = sum(
        1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b]
    )
    return 1 if inversions % 2 == 0 else -1


def oracle_full_tensor(cube: HermitianCube) -> np.ndarray:
    """Rebuild the full tensor independently of expand_full: spread every
    stored element over all index permutations, conjugating odd ones."""
    n = cube.levels
    canonical: dict[tuple[int, int, int], complex] = {}
    for i in range(1, n + 1):
        canonical[(i, i, i)] = complex(cube.diag[i - 1])
    for pos, (i, j) in enumerate(pair_keys(n)):
        canonical[(i, i, j)] = complex(cube.pair_re[pos])
        canonical[(i, j, j)] = complex(cube.pair_im[pos])
    for pos, key in enumerate(triple_keys(n)):
        canonical[key] = complex(cube.triple[pos])
    t = np.zeros((n, n, n), dtype=np.complex128)
    for key, value in canonical.items():
        for perm in itertools.permutations(range(3)):
            idx = tuple(key[p] - 1 for p in perm)
            t[idx] = value if _parity(perm) == 1 else value.conjugate()
    return t


def oracle_inner(a: HermitianCube, b: HermitianCube) -> float:
    """Plain-loop contraction over the independently rebuilt tensors."""
    ta, tb = oracle_full_tensor(a), oracle_full_tensor(b)
    total = 0.0 + 0.0j
    n = a.levels
    for i in range(n):
        for j in range(n):
            for k in range(n):
                total += ta[i, j, k].conjugate() * tb[i, j, k]
    assert abs(total.imag) < 1e-12
    return total.real


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240810))
