"""Hermitian density cubes: rank-3 tensor states stored by independent elements.

A cube over N levels is a complex tensor t[i,j,k] (levels numbered 1..N)
that is invariant under cyclic index permutations and complex-conjugated
under any index transposition.  That symmetry makes elements with a repeated
index real, so the independent data are

    diag[i]          = t[i,i,i]                  (N reals, outcome weights)
    pair_re[(i,j)]   = t[i,i,j]  for i < j       (real)
    pair_im[(i,j)]   = t[i,j,j]  for i < j       (real)
    triple[(i,j,k)]  = t[i,j,k]  for i < j < k   (complex)

pair_re / pair_im are named for the roles the two pair elements play under
the quantum embedding (carriers of Re and Im of a matrix element).  Only this
compressed form is stored; the full tensor exists via :func:`expand_full`,
which makes the symmetry impossible to violate.

States and measurement effects share this type; normalisation (trace one,
non-negative diagonal) is a checked predicate, not a separate class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np


# Modelling tolerance for state validity; floating-point tolerance for
# algebraic identities evaluated in double precision.
STATE_TOL = 1e-9
ALGEBRA_TOL = 1e-12


class ValidationError(ValueError):
    """An input violates a structural or state invariant."""


@lru_cache(maxsize=None)
def pair_keys(levels: int) -> tuple[tuple[int, int], ...]:
    """Ordered pairs (i, j), i < j, 1-based, lexicographic."""
    return tuple(
        (i, j) for i in range(1, levels + 1) for j in range(i + 1, levels + 1)
    )


@lru_cache(maxsize=None)
def triple_keys(levels: int) -> tuple[tuple[int, int, int], ...]:
    """Ordered triples (i, j, k), i < j < k, 1-based, lexicographic."""
    return tuple(
        (i, j, k)
        for i in range(1, levels + 1)
        for j in range(i + 1, levels + 1)
        for k in range(j + 1, levels + 1)
    )


@lru_cache(maxsize=None)
def _pair_pos(levels: int) -> dict[tuple[int, int], int]:
    return {key: pos for pos, key in enumerate(pair_keys(levels))}


@lru_cache(maxsize=None)
def _triple_pos(levels: int) -> dict[tuple[int, int, int], int]:
    return {key: pos for pos, key in enumerate(triple_keys(levels))}


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class HermitianCube:
    """Rank-3 Hermitian tensor over ``levels`` levels, compressed storage."""

    levels: int
    diag: np.ndarray
    pair_re: np.ndarray
    pair_im: np.ndarray
    triple: np.ndarray

    def __post_init__(self) -> None:
        n = self.levels
        if not isinstance(n, (int, np.integer)) or n < 2:
            raise ValidationError(f"levels must be an integer >= 2, got {n!r}")
        object.__setattr__(self, "levels", int(n))
        n_pairs = len(pair_keys(n))
        n_triples = len(triple_keys(n))
        diag = np.array(self.diag, dtype=np.float64).reshape(-1)
        pre = np.array(self.pair_re, dtype=np.float64).reshape(-1)
        pim = np.array(self.pair_im, dtype=np.float64).reshape(-1)
        tri = np.array(self.triple, dtype=np.complex128).reshape(-1)
        if diag.size != n or pre.size != n_pairs or pim.size != n_pairs or tri.size != n_triples:
            raise ValidationError(
                f"element arrays do not match levels={n}: "
                f"diag {diag.size}, pair {pre.size}/{pim.size}, triple {tri.size}"
            )
        for name, arr in (("diag", diag), ("pair_re", pre), ("pair_im", pim), ("triple", tri)):
            if not np.all(np.isfinite(arr)):
                raise ValidationError(f"non-finite value in {name}")
        object.__setattr__(self, "diag", _readonly(diag))
        object.__setattr__(self, "pair_re", _readonly(pre))
        object.__setattr__(self, "pair_im", _readonly(pim))
        object.__setattr__(self, "triple", _readonly(tri))

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, levels: int) -> "HermitianCube":
        return cls(
            levels,
            np.zeros(levels),
            np.zeros(len(pair_keys(levels))),
            np.zeros(len(pair_keys(levels))),
            np.zeros(len(triple_keys(levels)), dtype=np.complex128),
        )

    @classmethod
    def from_elements(
        cls,
        levels: int,
        diag: Sequence[float],
        pairs: Mapping[tuple[int, int], tuple[float, float]] | None = None,
        triples: Mapping[tuple[int, int, int], complex] | None = None,
    ) -> "HermitianCube":
        """Build from diag plus sparse {(i,j): (t_iij, t_ijj)} and {(i,j,k): z}."""
        pre = np.zeros(len(pair_keys(levels)))
        pim = np.zeros(len(pair_keys(levels)))
        tri = np.zeros(len(triple_keys(levels)), dtype=np.complex128)
        for key, (re_iij, im_ijj) in (pairs or {}).items():
            pos = _pair_pos(levels).get(tuple(key))
            if pos is None:
                raise ValidationError(f"pair index {key} not valid for levels={levels}")
            pre[pos] = re_iij
            pim[pos] = im_ijj
        for key, z in (triples or {}).items():
            pos = _triple_pos(levels).get(tuple(key))
            if pos is None:
                raise ValidationError(f"triple index {key} not valid for levels={levels}")
            tri[pos] = z
        return cls(levels, np.asarray(diag, dtype=np.float64), pre, pim, tri)

    @classmethod
    def basis_state(cls, levels: int, n: int) -> "HermitianCube":
        """The pure cube e_n with a single unit diagonal element."""
        if not 1 <= n <= levels:
            raise ValidationError(f"basis index {n} outside 1..{levels}")
        diag = np.zeros(levels)
        diag[n - 1] = 1.0
        return cls.from_elements(levels, diag)

    # -- accessors ---------------------------------------------------------

    def element(self, i: int, j: int, k: int) -> complex:
        """Tensor element t[i,j,k] (1-based), resolved through the symmetry."""
        for idx in (i, j, k):
            if not 1 <= idx <= self.levels:
                raise ValidationError(f"index {idx} outside 1..{self.levels}")
        if i == j == k:
            return complex(self.diag[i - 1])
        srt = tuple(sorted((i, j, k)))
        if srt[0] == srt[1] or srt[1] == srt[2]:
            a, b = (srt[0], srt[2])
            repeated = srt[1]
            pos = _pair_pos(self.levels)[(a, b)]
            return complex(self.pair_re[pos] if repeated == a else self.pair_im[pos])
        z = self.triple[_triple_pos(self.levels)[srt]]
        return complex(z) if _is_even_permutation((i, j, k)) else complex(z.conjugate())

    def trace(self) -> float:
        return float(self.diag.sum())

    def probabilities(self) -> np.ndarray:
        """Diagonal read as outcome probabilities, clamping rounding negatives."""
        return np.clip(self.diag, 0.0, None)

    # -- predicates --------------------------------------------------------

    def is_normalized(self, tol: float = STATE_TOL) -> bool:
        return abs(self.trace() - 1.0) <= tol and bool(np.all(self.diag >= -tol))

    def check_state(self, tol: float = STATE_TOL) -> None:
        """Raise ValidationError unless this cube is a normalised state."""
        if abs(self.trace() - 1.0) > tol:
            raise ValidationError(f"diagonal sums to {self.trace()!r}, expected 1")
        if np.any(self.diag < -tol):
            raise ValidationError(f"negative diagonal element: min {self.diag.min()!r}")

    # -- equality ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HermitianCube):
            return NotImplemented
        return (
            self.levels == other.levels
            and np.array_equal(self.diag, other.diag)
            and np.array_equal(self.pair_re, other.pair_re)
            and np.array_equal(self.pair_im, other.pair_im)
            and np.array_equal(self.triple, other.triple)
        )

    def allclose(self, other: "HermitianCube", tol: float = ALGEBRA_TOL) -> bool:
        return (
            self.levels == other.levels
            and np.allclose(self.diag, other.diag, rtol=0.0, atol=tol)
            and np.allclose(self.pair_re, other.pair_re, rtol=0.0, atol=tol)
            and np.allclose(self.pair_im, other.pair_im, rtol=0.0, atol=tol)
            and np.allclose(self.triple, other.triple, rtol=0.0, atol=tol)
        )

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        """JSON-ready form with 1-based indices; round-trips exactly."""
        return {
            "levels": self.levels,
            "diag": [float(x) for x in self.diag],
            "pairs": [
                {"i": i, "j": j, "re_iij": float(self.pair_re[p]), "im_ijj": float(self.pair_im[p])}
                for p, (i, j) in enumerate(pair_keys(self.levels))
            ],
            "triples": [
                {"i": i, "j": j, "k": k,
                 "re": float(self.triple[p].real), "im": float(self.triple[p].imag)}
                for p, (i, j, k) in enumerate(triple_keys(self.levels))
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "HermitianCube":
        try:
            levels = int(data["levels"])
            diag = [float(x) for x in data["diag"]]
            pairs = {
                (int(e["i"]), int(e["j"])): (float(e["re_iij"]), float(e["im_ijj"]))
                for e in data.get("pairs", [])
            }
            triples = {
                (int(e["i"]), int(e["j"]), int(e["k"])): complex(float(e["re"]), float(e["im"]))
                for e in data.get("triples", [])
            }
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed cube record: {exc}") from exc
        return cls.from_elements(levels, diag, pairs, triples)


def _is_even_permutation(idx: tuple[int, int, int]) -> bool:
    i, j, k = idx
    return (i < j < k) or (j < k < i) or (k < i < j)


# -- tensor algebra ----------------------------------------------------------


def expand_full(cube: HermitianCube) -> np.ndarray:
    """Materialise the full N x N x N complex tensor from the stored elements."""
    n = cube.levels
    t = np.zeros((n, n, n), dtype=np.complex128)
    for i in range(n):
        t[i, i, i] = cube.diag[i]
    for pos, (i, j) in enumerate(pair_keys(n)):
        a, b = i - 1, j - 1
        v_iij = cube.pair_re[pos]
        v_ijj = cube.pair_im[pos]
        t[a, a, b] = t[a, b, a] = t[b, a, a] = v_iij
        t[a, b, b] = t[b, a, b] = t[b, b, a] = v_ijj
    for pos, (i, j, k) in enumerate(triple_keys(n)):
        a, b, c = i - 1, j - 1, k - 1
        z = cube.triple[pos]
        t[a, b, c] = t[b, c, a] = t[c, a, b] = z
        t[b, a, c] = t[a, c, b] = t[c, b, a] = z.conjugate()
    return t


def compress_full(tensor: np.ndarray, check: bool = True, tol: float = ALGEBRA_TOL) -> HermitianCube:
    """Read a full tensor back into compressed storage.

    With ``check`` the tensor must satisfy the conjugate-transposition
    symmetry within ``tol``; canonical positions are read either way.
    """
    t = np.asarray(tensor, dtype=np.complex128)
    if t.ndim != 3 or len(set(t.shape)) != 1:
        raise ValidationError(f"expected a cubic rank-3 tensor, got shape {t.shape}")
    n = t.shape[0]
    diag = np.array([t[i, i, i].real for i in range(n)])
    pre = np.array([t[i - 1, i - 1, j - 1].real for i, j in pair_keys(n)])
    pim = np.array([t[i - 1, j - 1, j - 1].real for i, j in pair_keys(n)])
    tri = np.array([t[i - 1, j - 1, k - 1] for i, j, k in triple_keys(n)], dtype=np.complex128)
    cube = HermitianCube(n, diag, pre, pim, tri)
    if check:
        dev = np.max(np.abs(t - expand_full(cube))) if t.size else 0.0
        if dev > tol:
            raise ValidationError(f"tensor violates the index symmetry by {dev:.3e}")
    return cube


def inner(rho: HermitianCube, sigma: HermitianCube) -> float:
    """Contraction inner product sum_ijk conj(rho[ijk]) * sigma[ijk].

    Real by hermiticity; the (tiny) imaginary residue of the floating-point
    contraction is checked against ALGEBRA_TOL and then discarded.
    """
    if rho.levels != sigma.levels:
        raise ValidationError(f"dimension mismatch: {rho.levels} vs {sigma.levels}")
    value = complex(np.vdot(expand_full(rho), expand_full(sigma)))
    if abs(value.imag) > ALGEBRA_TOL:
        raise ValidationError(f"inner product has imaginary residue {value.imag:.3e}")
    return float(value.real)


def mix(components: Iterable[tuple[float, HermitianCube]]) -> HermitianCube:
    """Convex combination of cubes; weights must be >= 0 and sum to one."""
    components = list(components)
    if not components:
        raise ValidationError("mix requires at least one component")
    weights = np.array([float(w) for w, _ in components])
    cubes = [c for _, c in components]
    if np.any(weights < 0.0):
        raise ValidationError(f"negative weight: min {weights.min()!r}")
    if abs(weights.sum() - 1.0) > STATE_TOL:
        raise ValidationError(f"weights sum to {weights.sum()!r}, expected 1")
    levels = cubes[0].levels
    if any(c.levels != levels for c in cubes):
        raise ValidationError("all components must share the same number of levels")
    return HermitianCube(
        levels,
        sum(w * c.diag for w, c in zip(weights, cubes)),
        sum(w * c.pair_re for w, c in zip(weights, cubes)),
        sum(w * c.pair_im for w, c in zip(weights, cubes)),
        sum(w * c.triple for w, c in zip(weights, cubes)),
    )


def parameter_count(levels: int) -> int:
    """Free real parameters of a normalised cube: N^2 - 1 + 2*C(N,3)."""
    if levels < 2:
        raise ValidationError(f"levels must be >= 2, got {levels}")
    return levels**2 - 1 + 2 * math.comb(levels, 3)


def pairwise_positivity(rho: HermitianCube, sigma: HermitianCube, tol: float = STATE_TOL) -> bool:
    """Whether the mutual outcome probability (rho, sigma) is non-negative."""
    return inner(rho, sigma) >= -tol
