"""The three protocols, runnable under classical, quantum and cube theories:

* multi-slit interferometry with the alternating-sign interference orders,
* temporal correlations in the two-time measurement scheme,
* reconstruction of the non-quantum triple element from detector statistics.

All interference probabilities are joint pass-and-detect numbers: a closed
filter contributes zero rather than renormalising downstream statistics,
which makes the all-closed configuration vanish automatically.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .cube import STATE_TOL, HermitianCube, ValidationError, mix, triple_keys
from .dynamics import apply_transform, standard_transform
from .measurement import luders_update
from .quantum import dft_unitary, pure_density, quantum_luders
from .sampling import (
    generator,
    random_probability_vector,
    random_pure_state,
    random_span_state,
    random_stochastic_matrix,
    random_unitary,
)
from .states import nonquantum_state

THEORIES = ("classical", "quantum", "cube")

_SQRT3 = math.sqrt(3.0)


# -- slit configurations -------------------------------------------------------


@dataclass(frozen=True)
class SlitConfig:
    """Open/closed mask over k slits; bit 0 = open, 1 = closed."""

    mask: tuple[int, ...]

    def __post_init__(self) -> None:
        mask = tuple(int(b) for b in self.mask)
        if len(mask) < 2:
            raise ValidationError(f"need at least two slits, got {len(mask)}")
        if any(b not in (0, 1) for b in mask):
            raise ValidationError(f"mask bits must be 0 or 1, got {mask}")
        object.__setattr__(self, "mask", mask)

    @classmethod
    def from_string(cls, spec: str) -> "SlitConfig":
        if not all(ch in "01" for ch in spec):
            raise ValidationError(f"mask string must be over 0/1, got {spec!r}")
        return cls(tuple(int(ch) for ch in spec))

    @property
    def k(self) -> int:
        return len(self.mask)

    @property
    def open_slits(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, b in enumerate(self.mask) if b == 0)

    @property
    def n_closed(self) -> int:
        return sum(self.mask)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.mask)


def all_masks(k: int) -> tuple[str, ...]:
    """All 2^k mask strings over k slits, in binary order."""
    return tuple("".join(bits) for bits in itertools.product("01", repeat=k))


# -- Sorkin interference orders --------------------------------------------------


def sorkin_quantity(probabilities: Mapping[str, float], k: int) -> float:
    """Alternating-sign sum over all 2^k configurations.

    Each configuration enters with sign (-1)^(number of closed slits); the
    result is the genuine k-th-order interference of the table and vanishes
    whenever the table is additive over open slits, or more generally
    whenever it comes from a theory whose state tensors carry fewer than k
    indices.
    """
    masks = all_masks(k)
    missing = [m for m in masks if m not in probabilities]
    if missing:
        raise ValidationError(f"probability table incomplete: missing {missing[:4]}...")
    return float(sum((-1) ** m.count("1") * probabilities[m] for m in masks))


def pairwise_interference(
    probabilities: Mapping[str, float], k: int, a: int, b: int
) -> float:
    """Second-order term for slits a < b with every other slit closed."""
    if not 1 <= a < b <= k:
        raise ValidationError(f"slit pair ({a}, {b}) invalid for k={k}")
    total = 0.0
    for bits in itertools.product("01", repeat=2):
        mask = ["1"] * k
        mask[a - 1], mask[b - 1] = bits
        key = "".join(mask)
        if key not in probabilities:
            raise ValidationError(f"probability table incomplete: missing {key}")
        total += (-1) ** (bits.count("1")) * probabilities[key]
    return float(total)


def interference_orders(table: Mapping[str, Sequence[float]], k: int) -> dict:
    """Full-order and pairwise interference per detector for a config table."""
    n_det = len(next(iter(table.values())))
    per_detector = {}
    for d in range(n_det):
        sub = {mask: table[mask][d] for mask in table}
        per_detector[d + 1] = sorkin_quantity(sub, k)
    pairwise = {}
    for a in range(1, k + 1):
        for b in range(a + 1, k + 1):
            sub_vals = []
            for d in range(n_det):
                sub = {mask: table[mask][d] for mask in table}
                sub_vals.append(pairwise_interference(sub, k, a, b))
            pairwise[f"{a}{b}"] = sub_vals
    order_name = "I" + "".join(str(i) for i in range(1, k + 1))
    return {
        "full_order": {
            "name": order_name,
            "per_detector": [per_detector[d] for d in sorted(per_detector)],
        },
        "pairwise": pairwise,
    }


# -- cube transforms on path triples ---------------------------------------------


def embed_on_paths(cube3: HermitianCube, paths: Sequence[int], levels: int) -> HermitianCube:
    """Place a three-level diagonal-plus-triple cube onto chosen paths of a
    larger system (remaining paths carry zero weight)."""
    paths = tuple(sorted(int(p) for p in paths))
    if len(paths) != 3 or len(set(paths)) != 3:
        raise ValidationError(f"need three distinct paths, got {paths}")
    if not all(1 <= p <= levels for p in paths):
        raise ValidationError(f"paths {paths} outside 1..{levels}")
    if cube3.levels != 3:
        raise ValidationError("source cube must be three-level")
    if np.max(np.abs(cube3.pair_re), initial=0.0) > STATE_TOL or (
        np.max(np.abs(cube3.pair_im), initial=0.0) > STATE_TOL
    ):
        raise ValidationError("source cube must have no pair elements")
    diag = np.zeros(levels)
    for slot, p in enumerate(paths):
        diag[p - 1] = cube3.diag[slot]
    return HermitianCube.from_elements(
        levels, diag, triples={paths: complex(cube3.triple[0])}
    )


def apply_transform_on_paths(
    cube: HermitianCube,
    paths: Sequence[int],
    matrix: np.ndarray | None = None,
) -> HermitianCube:
    """Apply the span transform to three chosen paths of an N-level cube.

    The five coordinates (three diagonal entries on the paths plus the triple
    element over exactly those paths) transform through the 5x5 matrix;
    every other element is untouched.  Pair elements must vanish, as for the
    three-level transform.  This block action is one concrete composition
    convention and is labelled in experiment metadata wherever it is used.
    """
    t = standard_transform() if matrix is None else np.asarray(matrix, dtype=np.complex128)
    paths = tuple(sorted(int(p) for p in paths))
    if len(paths) != 3 or len(set(paths)) != 3:
        raise ValidationError(f"need three distinct paths, got {paths}")
    if not all(1 <= p <= cube.levels for p in paths):
        raise ValidationError(f"paths {paths} outside 1..{cube.levels}")
    if cube.pair_re.size and (
        np.max(np.abs(cube.pair_re)) > STATE_TOL or np.max(np.abs(cube.pair_im)) > STATE_TOL
    ):
        raise ValidationError("transform on paths is undefined for pair elements")
    if cube.levels == 3:
        return apply_transform(cube, None if matrix is None else t)
    tri_keys = triple_keys(cube.levels)
    pos = tri_keys.index(paths)
    z = cube.triple[pos]
    coeffs = np.array(
        [
            cube.diag[paths[0] - 1],
            cube.diag[paths[1] - 1],
            cube.diag[paths[2] - 1],
            _SQRT3 * z,
            _SQRT3 * z.conjugate(),
        ],
        dtype=np.complex128,
    )
    out = t @ coeffs
    if np.max(np.abs(out[:3].imag)) > 1e-10 or abs(out[4] - out[3].conjugate()) > 1e-10:
        raise ValidationError("transform output is not a Hermitian cube")
    diag = cube.diag.copy()
    for slot, p in enumerate(paths):
        diag[p - 1] = out[slot].real
    tri = cube.triple.copy()
    tri[pos] = out[3] / _SQRT3
    return HermitianCube(cube.levels, diag, cube.pair_re, cube.pair_im, tri)


# -- interferometer engine --------------------------------------------------------


def _cube_instance(k, state, transform, rng=None):
    if k == 3:
        matrix = transform if transform is not None else None
        if rng is not None and state is None:
            state = random_span_state(rng)
        initial = state if state is not None else HermitianCube.basis_state(3, 1)
        evolve = lambda c: apply_transform(c, matrix)  # noqa: E731
    elif k == 4:
        paths = transform if transform is not None else (1, 2, 3)
        if rng is not None:
            paths = tuple(
                sorted(rng.choice(np.arange(1, 5), size=3, replace=False).tolist())
            )
            if state is None:
                weights = rng.dirichlet(np.ones(5))
                members = [HermitianCube.basis_state(4, n) for n in range(1, 5)]
                members.append(
                    embed_on_paths(nonquantum_state(int(rng.integers(1, 4))), paths, 4)
                )
                state = mix(list(zip(weights, members)))
        initial = state if state is not None else HermitianCube.basis_state(4, 1)
        evolve = lambda c: apply_transform_on_paths(c, paths)  # noqa: E731
    else:
        raise ValidationError(f"cube interferometer supports k in (3, 4), got {k}")
    if initial.levels != k:
        raise ValidationError(f"state has {initial.levels} levels, expected {k}")

    def filter_(cube, open_slits):
        if not open_slits:
            return 0.0, None
        return luders_update(cube, open_slits)

    def detect(cube, d):
        return float(cube.probabilities()[d - 1])

    return initial, evolve, filter_, detect


def _quantum_instance(k, state, transform, rng=None):
    if rng is not None:
        if state is None:
            state = pure_density(random_pure_state(k, rng))
        if transform is None:
            transform = random_unitary(k, rng)
    u = transform if transform is not None else dft_unitary(k)
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (k, k):
        raise ValidationError(f"unitary shape {u.shape} does not match k={k}")
    if state is None:
        rho0 = pure_density(np.eye(k)[0])
    else:
        rho0 = np.asarray(state, dtype=np.complex128)
        if rho0.ndim == 1:
            rho0 = pure_density(rho0)
    if rho0.shape != (k, k):
        raise ValidationError(f"state shape {rho0.shape} does not match k={k}")

    def evolve(rho):
        return u @ rho @ u.conj().T

    def filter_(rho, open_slits):
        if not open_slits:
            return 0.0, None
        return quantum_luders(rho, open_slits)

    def detect(rho, d):
        return float(rho[d - 1, d - 1].real)

    return rho0, evolve, filter_, detect


def _classical_instance(k, state, transform, rng=None):
    if rng is not None:
        if state is None:
            state = random_probability_vector(k, rng)
        if transform is None:
            transform = random_stochastic_matrix(k, rng)
    s_mat = transform if transform is not None else np.full((k, k), 1.0 / k)
    s_mat = np.asarray(s_mat, dtype=np.float64)
    if s_mat.shape != (k, k):
        raise ValidationError(f"stochastic matrix shape {s_mat.shape} does not match k={k}")
    if np.any(s_mat < -STATE_TOL) or np.max(np.abs(s_mat.sum(axis=0) - 1.0)) > STATE_TOL:
        raise ValidationError("transform is not column-stochastic")
    if state is None:
        p0 = np.zeros(k)
        p0[0] = 1.0
    else:
        p0 = np.asarray(state, dtype=np.float64).reshape(-1)
    if p0.size != k:
        raise ValidationError(f"state length {p0.size} does not match k={k}")

    def evolve(p):
        return s_mat @ p

    def filter_(p, open_slits):
        masked = np.zeros_like(p)
        for slit in open_slits:
            masked[slit - 1] = p[slit - 1]
        p_pass = float(masked.sum())
        if p_pass <= STATE_TOL:
            return 0.0, None
        return p_pass, masked / p_pass

    def detect(p, d):
        return float(p[d - 1])

    return p0, evolve, filter_, detect


def _instance(theory, k, state, transform, rng=None):
    if theory == "cube":
        return _cube_instance(k, state, transform, rng)
    if theory == "quantum":
        return _quantum_instance(k, state, transform, rng)
    if theory == "classical":
        return _classical_instance(k, state, transform, rng)
    raise ValidationError(f"unknown theory {theory!r}; expected one of {THEORIES}")


def interference_table(
    theory: str,
    k: int,
    *,
    state=None,
    transform=None,
    seed: int | None = None,
    rng: np.random.Generator | None = None,
) -> dict[str, list[float]]:
    """Joint detection probabilities for every slit configuration.

    Returns {mask: [per-detector joint probability]}.  With a seed (or
    generator) and no explicit state/transform, a random instance is drawn
    for the requested theory; otherwise the deterministic defaults are the
    basis state on path 1 with the built-in transform / Fourier splitter /
    uniform stochastic matrix.
    """
    if rng is None and seed is not None:
        rng = generator(seed)
    initial, evolve, filter_, detect = _instance(theory, k, state, transform, rng)
    table: dict[str, list[float]] = {}
    after_first = evolve(initial)
    for mask in all_masks(k):
        config = SlitConfig.from_string(mask)
        p_pass, post = filter_(after_first, config.open_slits)
        if post is None:
            table[mask] = [0.0] * k
            continue
        final = evolve(post)
        table[mask] = [p_pass * detect(final, d) for d in range(1, k + 1)]
    return table


def interferometer_run(
    theory: str,
    config: SlitConfig | str,
    detector: int,
    *,
    state=None,
    transform=None,
    seed: int | None = None,
) -> float:
    """Joint probability of passing the filter and firing one detector."""
    if isinstance(config, str):
        config = SlitConfig.from_string(config)
    k = config.k
    if not 1 <= detector <= k:
        raise ValidationError(f"detector {detector} outside 1..{k}")
    rng = generator(seed) if seed is not None else None
    initial, evolve, filter_, detect = _instance(theory, k, state, transform, rng)
    p_pass, post = filter_(evolve(initial), config.open_slits)
    if post is None:
        return 0.0
    return p_pass * detect(evolve(post), detector)


# -- Sorkin sweeps -----------------------------------------------------------------


@dataclass(frozen=True)
class SweepResult:
    """Extremes of interference orders over random instances."""

    theory: str
    k: int
    trials: int
    seed: int | None
    max_abs_full: float
    max_abs_pairwise: float


_SUPPORTED_SWEEPS = {
    "classical": (2, 3, 4),
    "quantum": (2, 3, 4),
    "cube": (3, 4),
}


def sorkin_sweep(theory: str, k: int, trials: int, seed: int | None = None) -> SweepResult:
    """Max |I_{1..k}| and max pairwise |I_ab| over random instances.

    The cube sweep always includes the canonical instance (basis state on
    path 1 with the built-in transform) as its first trial.
    """
    if theory not in _SUPPORTED_SWEEPS:
        raise ValidationError(f"unknown theory {theory!r}")
    if k not in _SUPPORTED_SWEEPS[theory]:
        raise ValidationError(f"theory {theory!r} does not support k={k}")
    if trials < 1:
        raise ValidationError(f"trials must be >= 1, got {trials}")
    rng = generator(seed)
    max_full = 0.0
    max_pair = 0.0
    for trial in range(trials):
        canonical = theory == "cube" and trial == 0
        table = interference_table(theory, k, rng=None if canonical else rng)
        orders = interference_orders(table, k)
        max_full = max(max_full, max(abs(v) for v in orders["full_order"]["per_detector"]))
        for vals in orders["pairwise"].values():
            max_pair = max(max_pair, max(abs(v) for v in vals))
    return SweepResult(theory, k, trials, seed, max_full, max_pair)


# -- temporal correlations -----------------------------------------------------------


@dataclass(frozen=True)
class LeggettGargResult:
    """Two-time correlations of the four measured pairs and their combination."""

    C12: float
    C23: float
    C34: float
    C14: float
    K: float


_LG_PAIRS = ((1, 2), (2, 3), (3, 4), (1, 4))
_PLUS_BLOCK = frozenset({1})
_MINUS_BLOCK = frozenset({2, 3})


def _lg_ops(theory, transform, rng=None):
    if theory == "cube":
        matrix = transform

        def evolve(c):
            return apply_transform(c, matrix)

        def measure(c):
            return [
                (out, *luders_update(c, blk))
                for out, blk in ((1.0, _PLUS_BLOCK), (-1.0, _MINUS_BLOCK))
            ]

        return HermitianCube.basis_state(3, 1), evolve, measure
    if theory == "quantum":
        u = transform if transform is not None else dft_unitary(3)
        if rng is not None and transform is None:
            u = random_unitary(3, rng)

        def evolve(rho):
            return u @ rho @ u.conj().T

        def measure(rho):
            return [
                (out, *quantum_luders(rho, blk))
                for out, blk in ((1.0, _PLUS_BLOCK), (-1.0, _MINUS_BLOCK))
            ]

        return pure_density([1.0, 0.0, 0.0]), evolve, measure
    if theory == "classical":
        s_mat = transform if transform is not None else np.full((3, 3), 1.0 / 3.0)
        if rng is not None and transform is None:
            s_mat = random_stochastic_matrix(3, rng)

        def evolve(p):
            return s_mat @ p

        def measure(p):
            branches = []
            for out, blk in ((1.0, _PLUS_BLOCK), (-1.0, _MINUS_BLOCK)):
                masked = np.array([p[i - 1] if i in blk else 0.0 for i in (1, 2, 3)])
                prob = float(masked.sum())
                branches.append(
                    (out, prob, masked / prob if prob > STATE_TOL else None)
                )
            return branches

        return np.array([1.0, 0.0, 0.0]), evolve, measure
    raise ValidationError(f"unknown theory {theory!r}; expected one of {THEORIES}")


def leggett_garg_run(
    theory: str,
    *,
    transform=None,
    rng: np.random.Generator | None = None,
) -> LeggettGargResult:
    """Exact two-time correlations by branch enumeration (never sampled).

    Protocol: the system starts on path 1, one transform is applied between
    consecutive times t1..t4, and the dichotomic observable is +1 on path 1
    and -1 on paths {2, 3}.  Each run measures only one pair of times, with
    the update rule applied after the first measurement.
    """
    initial, evolve, measure = _lg_ops(theory, transform, rng)
    corr = {}
    for (i, j) in _LG_PAIRS:
        state = initial
        for _ in range(i - 1):
            state = evolve(state)
        total = 0.0
        for outcome_a, p_a, post in measure(state):
            if post is None or p_a <= 0.0:
                continue
            mid = post
            for _ in range(j - i):
                mid = evolve(mid)
            for outcome_b, p_b, _ in measure(mid):
                total += outcome_a * outcome_b * p_a * p_b
        corr[(i, j)] = total
    c12, c23, c34, c14 = (corr[p] for p in _LG_PAIRS)
    return LeggettGargResult(c12, c23, c34, c14, abs(c12 - c23 + c34 + c14))


@dataclass(frozen=True)
class LeggettGargSweep:
    theory: str
    trials: int
    seed: int | None
    max_K: float


def leggett_garg_sweep(theory: str, trials: int, seed: int | None = None) -> LeggettGargSweep:
    """Max correlation combination over random transform instances."""
    if trials < 1:
        raise ValidationError(f"trials must be >= 1, got {trials}")
    rng = generator(seed)
    max_k = 0.0
    for _ in range(trials):
        result = leggett_garg_run(theory, rng=rng)
        max_k = max(max_k, result.K)
    return LeggettGargSweep(theory, trials, seed, max_k)


# -- tomography ------------------------------------------------------------------------


def transformed_detector_probs(
    cube: HermitianCube, matrix: np.ndarray | None = None
) -> np.ndarray:
    """Detector probabilities after one transform, for three-level cubes.

    Computed through the span coordinates (diagonal plus triple element), so
    it is defined for every cube: pair elements stay off-diagonal under the
    block action of the transform and never reach the detectors.
    """
    if cube.levels != 3:
        raise ValidationError(f"expected a 3-level cube, got {cube.levels}")
    t = standard_transform() if matrix is None else np.asarray(matrix, dtype=np.complex128)
    z = complex(cube.triple[0])
    coeffs = np.array(
        [cube.diag[0], cube.diag[1], cube.diag[2], _SQRT3 * z, _SQRT3 * z.conjugate()],
        dtype=np.complex128,
    )
    mu = t @ coeffs
    if np.max(np.abs(mu[:3].imag)) > STATE_TOL:
        raise ValidationError("transform produced complex detector weights")
    probs = np.clip(mu[:3].real, 0.0, None)
    total = probs.sum()
    if abs(total - 1.0) > STATE_TOL:
        raise ValidationError(f"detector probabilities sum to {total!r}, expected 1")
    return probs / total


_TOMOGRAPHY_DESIGN = np.array(
    [
        [2.0 * _SQRT3, 0.0],
        [-_SQRT3, 3.0],
        [-_SQRT3, -3.0],
    ]
)


class TomographyFit(NamedTuple):
    """Least-squares estimate of the triple element and the fit residual."""

    z: complex
    residual: float


def _check_prob_vector(vec, name: str) -> np.ndarray:
    v = np.asarray(vec, dtype=np.float64).reshape(-1)
    if v.size != 3:
        raise ValidationError(f"{name} must have three entries, got {v.size}")
    if np.any(v < -STATE_TOL) or abs(v.sum() - 1.0) > STATE_TOL:
        raise ValidationError(f"{name} is not a probability vector: {v.tolist()}")
    return v


def tomography_reconstruct(mu, p) -> TomographyFit:
    """Invert the linear relation between post-transform detector statistics
    and the triple element.

    mu are the detector probabilities after one transform, p the outcome
    probabilities in the standard basis.  The relation

        2 mu_1 - p_2 - p_3 =  2 sqrt3 Re z
        2 mu_2 - p_1 - p_3 = -sqrt3  Re z + 3 Im z
        2 mu_3 - p_1 - p_2 = -sqrt3  Re z - 3 Im z

    is solved by least squares; exact inputs give the exact z, sampled
    inputs report the leftover residual.
    """
    mu = _check_prob_vector(mu, "mu")
    p = _check_prob_vector(p, "p")
    b = np.array(
        [
            2.0 * mu[0] - p[1] - p[2],
            2.0 * mu[1] - p[0] - p[2],
            2.0 * mu[2] - p[0] - p[1],
        ]
    )
    sol, *_ = np.linalg.lstsq(_TOMOGRAPHY_DESIGN, b, rcond=None)
    residual = float(np.linalg.norm(_TOMOGRAPHY_DESIGN @ sol - b))
    return TomographyFit(complex(sol[0], sol[1]), residual)


def simulate_counts(
    rho: HermitianCube,
    protocol: str,
    shots: int,
    seed: int | None | np.random.Generator = None,
) -> np.ndarray:
    """Multinomial detector counts, deterministic per seed.

    protocol "direct" reads the standard basis; "after_T" applies one
    transform first.
    """
    if shots < 1:
        raise ValidationError(f"shots must be >= 1, got {shots}")
    if protocol == "direct":
        probs = rho.probabilities()
    elif protocol == "after_T":
        probs = transformed_detector_probs(rho)
    else:
        raise ValidationError(f"unknown protocol {protocol!r}; use 'direct' or 'after_T'")
    total = probs.sum()
    if abs(total - 1.0) > STATE_TOL:
        raise ValidationError(f"probabilities sum to {total!r}, expected 1")
    rng = generator(seed)
    return rng.multinomial(shots, probs / total)


def tomography_estimate(
    rho: HermitianCube, shots: int, seed: int | None = None
) -> dict:
    """Sampled reconstruction: ``shots`` per arm (direct and after-transform).

    Returns the estimate together with the raw counts so records can be
    replayed exactly.
    """
    seq = np.random.SeedSequence(seed).spawn(2)
    direct = simulate_counts(rho, "direct", shots, np.random.Generator(np.random.PCG64(seq[0])))
    transformed = simulate_counts(
        rho, "after_T", shots, np.random.Generator(np.random.PCG64(seq[1]))
    )
    p_hat = direct / shots
    mu_hat = transformed / shots
    fit = tomography_reconstruct(mu_hat, p_hat)
    return {
        "shots_per_arm": shots,
        "counts_direct": direct.tolist(),
        "counts_after_T": transformed.tolist(),
        "p_hat": p_hat.tolist(),
        "mu_hat": mu_hat.tolist(),
        "z_hat": fit.z,
        "residual": fit.residual,
    }


# -- experiment records ------------------------------------------------------------------


RECORD_SCHEMA = "densitycube.experiment/1"


@dataclass(frozen=True)
class ExperimentRecord:
    """A named run: inputs, probability table and derived quantities."""

    name: str
    theory: str | None
    inputs: dict
    probabilities: dict[str, list[float]] | None
    derived: dict
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.probabilities is not None:
            for mask, row in self.probabilities.items():
                for value in row:
                    if not -1e-12 <= value <= 1.0 + 1e-12:
                        raise ValidationError(
                            f"probability {value!r} for config {mask} outside [0, 1]"
                        )
            k = self.inputs.get("k")
            if k is not None and set(self.probabilities) != set(all_masks(int(k))):
                raise ValidationError("interference table must cover all configurations")

    def to_dict(self, manifest: dict | None = None) -> dict:
        doc = {
            "schema": RECORD_SCHEMA,
            "name": self.name,
            "theory": self.theory,
            "inputs": self.inputs,
            "probabilities": self.probabilities,
            "derived": self.derived,
            "metadata": self.metadata,
        }
        if manifest is not None:
            doc["manifest"] = manifest
        return doc

    def csv_rows(self) -> list[tuple]:
        rows: list[tuple] = [("config", "detector", "probability")]
        if self.probabilities:
            for mask in sorted(self.probabilities):
                for d, value in enumerate(self.probabilities[mask], start=1):
                    rows.append((mask, d, value))
        return rows
