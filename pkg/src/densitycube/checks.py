"""Machine-checkable invariant suite backing the ``check`` command.

Every check is named, deterministic (fixed internal seeds) and fast; the
suite as a whole doubles as a smoke test of a build and as a validator for
user-supplied transforms (pass one to ``run_all_checks`` and the dynamics
checks run against it instead of the built-in).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import cube as cc
from . import dynamics, experiments, measurement, quantum, states
from .sampling import generator, random_density_matrix, random_span_state, random_structural_cube

_CHECK_SEED = 20240801


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _expand_roundtrip() -> tuple[bool, str]:
    rng = generator(_CHECK_SEED)
    worst = 0.0
    for _ in range(50):
        c = random_structural_cube(int(rng.integers(2, 6)), rng)
        back = cc.compress_full(cc.expand_full(c))
        if not (c == back):
            return False, "expand/compress round-trip is not exact"
        full = cc.expand_full(c)
        dev = max(
            np.max(np.abs(full - np.transpose(full, (1, 2, 0)))),
            np.max(np.abs(full - np.transpose(full, (1, 0, 2)).conj())),
        )
        worst = max(worst, float(dev))
    return worst <= 1e-15, f"max symmetry deviation {worst:.2e}"


def _inner_real_symmetric() -> tuple[bool, str]:
    rng = generator(_CHECK_SEED + 1)
    worst = 0.0
    for _ in range(100):
        a = random_structural_cube(3, rng)
        b = random_structural_cube(3, rng)
        worst = max(worst, abs(cc.inner(a, b) - cc.inner(b, a)))
    return worst <= 1e-12, f"max asymmetry {worst:.2e}"


def _born_completeness() -> tuple[bool, str]:
    rng = generator(_CHECK_SEED + 2)
    worst = 0.0
    for _ in range(100):
        rho = random_structural_cube(3, rng)
        total = sum(
            cc.inner(cc.HermitianCube.basis_state(3, n), rho) for n in (1, 2, 3)
        )
        worst = max(worst, abs(total - 1.0))
    return worst <= 1e-12, f"max deviation of probability sum from 1: {worst:.2e}"


def _basis_orthonormal(basis) -> tuple[bool, str]:
    worst = 0.0
    for i, a in enumerate(basis.members):
        for j, b in enumerate(basis.members):
            target = 1.0 if i == j else 0.0
            worst = max(worst, abs(cc.inner(a, b) - target))
    return worst <= 1e-12, f"max overlap deviation {worst:.2e}"


def _overlap_closed_form() -> tuple[bool, str]:
    rng = generator(_CHECK_SEED + 3)
    worst = 0.0
    for _ in range(200):
        psi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        phi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        psi /= np.linalg.norm(psi)
        phi /= np.linalg.norm(phi)
        n, m = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        lhs = cc.inner(states.rho_n_of_psi(psi, n), states.rho_n_of_psi(phi, m))
        worst = max(worst, abs(lhs - states.family_overlap(psi, n, phi, m)))
    return worst <= 1e-10, f"max closed-form mismatch {worst:.2e}"


def _subspace_orthonormal() -> tuple[bool, str]:
    basis = dynamics.subspace_basis()
    gram = np.array(
        [[np.vdot(basis[a], basis[b]) for b in range(5)] for a in range(5)]
    )
    dev = float(np.max(np.abs(gram - np.eye(5))))
    return dev <= 1e-12, f"max Gram deviation {dev:.2e}"


def _transform_unitary(t) -> tuple[bool, str]:
    dev = float(np.max(np.abs(t.conj().T @ t - np.eye(5))))
    return dev <= 1e-12, f"max unitarity deviation {dev:.2e}"


def _transform_involution(t) -> tuple[bool, str]:
    dev = float(np.max(np.abs(t @ t - np.eye(5))))
    return dev <= 1e-12, f"max involution deviation {dev:.2e}"


def _transform_maps_basis(t) -> tuple[bool, str]:
    dev = 0.0
    for n in (1, 2, 3):
        img = t @ dynamics.basis_coefficients(n)
        dev = max(dev, float(np.max(np.abs(img - dynamics.nonquantum_coefficients(n)))))
    return dev <= 1e-12, f"max basis-image deviation {dev:.2e}"


def _transform_hermiticity(t) -> tuple[bool, str]:
    rng = generator(_CHECK_SEED + 4)
    for _ in range(100):
        out = dynamics.apply_transform(random_span_state(rng), t)
        out.check_state()
    return True, "transform output stays a normalised Hermitian cube"


def _transform_norm_preserving(t) -> tuple[bool, str]:
    rng = generator(_CHECK_SEED + 5)
    worst = 0.0
    for _ in range(100):
        a = random_span_state(rng)
        b = random_span_state(rng)
        lhs = cc.inner(dynamics.apply_transform(a, t), dynamics.apply_transform(b, t))
        worst = max(worst, abs(lhs - cc.inner(a, b)))
    return worst <= 1e-10, f"max inner-product drift {worst:.2e}"


def _embedding_isometry() -> tuple[bool, str]:
    rng = generator(_CHECK_SEED + 6)
    worst = 0.0
    for _ in range(200):
        a = random_density_matrix(3, rng)
        b = random_density_matrix(3, rng)
        lhs = float(np.trace(a.conj().T @ b).real)
        rhs = cc.inner(quantum.embed_matrix(a), quantum.embed_matrix(b))
        worst = max(worst, abs(lhs - rhs))
    return worst <= 1e-10, f"max isometry deviation {worst:.2e}"


def _bloch_roundtrip() -> tuple[bool, str]:
    rng = generator(_CHECK_SEED + 7)
    worst = 0.0
    for _ in range(100):
        v = rng.standard_normal(3)
        v *= rng.uniform(0.0, 1.0) / np.linalg.norm(v)
        back = quantum.extract_bloch(quantum.embed_bloch(v))
        worst = max(worst, float(np.max(np.abs(back - v))))
    return worst <= 1e-12, f"max Bloch round-trip deviation {worst:.2e}"


def _pauli_norms() -> tuple[bool, str]:
    paulis = quantum.pauli_cubes()
    worst = 0.0
    for a, pa in enumerate(paulis):
        for b, pb in enumerate(paulis):
            if a == 0 or b == 0:
                continue
            target = 2.0 if a == b else 0.0
            worst = max(worst, abs(cc.inner(pa, pb) - target))
    worst = max(worst, abs(cc.inner(paulis[0], paulis[0]) - 2.0))
    return worst <= 1e-12, f"max Pauli-cube overlap deviation {worst:.2e}"


def _measurement_completeness() -> tuple[bool, str]:
    rng = generator(_CHECK_SEED + 8)
    worst = 0.0
    for _ in range(100):
        rho = random_structural_cube(3, rng, pair_scale=0.05, triple_scale=0.05)
        part = measurement.BasisPartition.from_string("1|2,3", 3)
        worst = max(worst, abs(measurement.outcome_probabilities(rho, part).sum() - 1.0))
        part = measurement.BasisPartition.singletons(3)
        worst = max(worst, abs(measurement.outcome_probabilities(rho, part).sum() - 1.0))
    return worst <= 1e-12, f"max completeness deviation {worst:.2e}"


def _luders_idempotent() -> tuple[bool, str]:
    rng = generator(_CHECK_SEED + 9)
    for _ in range(50):
        rho = random_span_state(rng)
        p1, once = measurement.luders_update(rho, {2, 3})
        if once is None:
            continue
        p2, twice = measurement.luders_update(once, {2, 3})
        if abs(p2 - 1.0) > 1e-12 or not once.allclose(twice, 1e-12):
            return False, "repeated update changed the state"
    return True, "update is idempotent on its own block"


def _luders_quantum_agreement() -> tuple[bool, str]:
    rng = generator(_CHECK_SEED + 10)
    worst = 0.0
    for _ in range(100):
        mat = random_density_matrix(3, rng)
        pq, post_q = quantum.quantum_luders(mat, {1, 2})
        pc, post_c = measurement.luders_update(quantum.embed_matrix(mat), {1, 2})
        worst = max(worst, abs(pq - pc))
        if post_q is not None and post_c is not None:
            embedded = quantum.embed_matrix(post_q)
            diff = max(
                float(np.max(np.abs(embedded.diag - post_c.diag))),
                float(np.max(np.abs(embedded.pair_re - post_c.pair_re))),
                float(np.max(np.abs(embedded.pair_im - post_c.pair_im))),
            )
            worst = max(worst, diff)
    return worst <= 1e-10, f"max embed/update mismatch {worst:.2e}"


TRIPLE_SLIT_EXPECTED = {
    "000": 1.0,
    "001": 0.25,
    "010": 0.25,
    "100": 0.5,
    "011": 0.0,
    "101": 0.25,
    "110": 0.25,
    "111": 0.0,
}


def _triple_slit_table(t) -> tuple[bool, str]:
    table = experiments.interference_table("cube", 3, transform=t)
    worst = max(
        abs(table[mask][0] - expected) for mask, expected in TRIPLE_SLIT_EXPECTED.items()
    )
    i3 = experiments.sorkin_quantity({m: row[0] for m, row in table.items()}, 3)
    worst = max(worst, abs(i3 - 0.5))
    return worst <= 1e-12, f"max table deviation {worst:.2e} (third order {i3!r})"


def _sorkin_classical_null() -> tuple[bool, str]:
    res = experiments.sorkin_sweep("classical", 2, 100, seed=_CHECK_SEED + 11)
    return res.max_abs_full <= 1e-12, f"max |I12| = {res.max_abs_full:.2e}"


def _sorkin_quantum_null() -> tuple[bool, str]:
    res = experiments.sorkin_sweep("quantum", 3, 100, seed=_CHECK_SEED + 12)
    ok = res.max_abs_full <= 1e-10 and res.max_abs_pairwise > 1e-2
    return ok, (
        f"max |I123| = {res.max_abs_full:.2e}, max pairwise = {res.max_abs_pairwise:.3f}"
    )


def _leggett_garg_cube(t) -> tuple[bool, str]:
    res = experiments.leggett_garg_run("cube", transform=t)
    ok = (
        res.C12 == -1.0
        and res.C23 == 0.0
        and res.C34 == -1.0
        and res.C14 == -1.0
        and res.K == 3.0
    )
    return ok, f"C = ({res.C12}, {res.C23}, {res.C34}, {res.C14}), K = {res.K}"


def _tomography_exact(t) -> tuple[bool, str]:
    worst = 0.0
    targets = [states.nonquantum_state(n) for n in (1, 2, 3)]
    targets += [cc.HermitianCube.basis_state(3, n) for n in (1, 2, 3)]
    for rho in targets:
        mu = experiments.transformed_detector_probs(rho, t)
        fit = experiments.tomography_reconstruct(mu, rho.probabilities())
        worst = max(worst, abs(fit.z - complex(rho.triple[0])))
    return worst <= 1e-12, f"max |z_hat - z| = {worst:.2e}"


def _qutrit_obstruction() -> tuple[bool, str]:
    scan = dynamics.qutrit_obstruction_scan(2000, seed=_CHECK_SEED + 13)
    ok = abs(scan.min_overlap - 0.5) <= 1e-12 and abs(scan.max_overlap - 0.5) <= 1e-12
    return ok, f"overlap range [{scan.min_overlap!r}, {scan.max_overlap!r}]"


def _parameter_counts() -> tuple[bool, str]:
    expected = {2: 3, 3: 10, 4: 23}
    for n, value in expected.items():
        if cc.parameter_count(n) != value:
            return False, f"parameter_count({n}) = {cc.parameter_count(n)}, expected {value}"
    for n in range(2, 9):
        c = cc.HermitianCube.zeros(n)
        stored = c.diag.size + c.pair_re.size + c.pair_im.size + 2 * c.triple.size
        if cc.parameter_count(n) != stored - 1:
            return False, f"layout mismatch at {n} levels"
    return True, "counts 3/10/23 and layout consistent for 2..8 levels"


def run_all_checks(transform: np.ndarray | None = None) -> list[CheckResult]:
    """Run every invariant check; dynamics checks use ``transform`` if given."""
    t = dynamics.standard_transform() if transform is None else np.asarray(
        transform, dtype=np.complex128
    )
    suite: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
        ("cube_expand_roundtrip", _expand_roundtrip),
        ("cube_inner_symmetric", _inner_real_symmetric),
        ("cube_born_completeness", _born_completeness),
        ("standard_basis_orthonormal", lambda: _basis_orthonormal(states.standard_basis(3))),
        ("nonquantum_basis_orthonormal", lambda: _basis_orthonormal(states.nonquantum_basis())),
        ("family_overlap_closed_form", _overlap_closed_form),
        ("subspace_orthonormal", _subspace_orthonormal),
        ("transform_unitary", lambda: _transform_unitary(t)),
        ("transform_involution", lambda: _transform_involution(t)),
        ("transform_maps_basis", lambda: _transform_maps_basis(t)),
        ("transform_preserves_hermiticity", lambda: _transform_hermiticity(t)),
        ("transform_preserves_norm", lambda: _transform_norm_preserving(t)),
        ("embedding_isometry", _embedding_isometry),
        ("bloch_roundtrip", _bloch_roundtrip),
        ("pauli_cube_norms", _pauli_norms),
        ("measurement_completeness", _measurement_completeness),
        ("luders_idempotent", _luders_idempotent),
        ("luders_quantum_agreement", _luders_quantum_agreement),
        ("triple_slit_table", lambda: _triple_slit_table(t)),
        ("sorkin_classical_null", _sorkin_classical_null),
        ("sorkin_quantum_null", _sorkin_quantum_null),
        ("leggett_garg_cube", lambda: _leggett_garg_cube(t)),
        ("tomography_exact", lambda: _tomography_exact(t)),
        ("qutrit_obstruction", _qutrit_obstruction),
        ("parameter_counts", _parameter_counts),
    ]
    results = []
    for name, fn in suite:
        try:
            passed, detail = fn()
        except Exception as exc:  # a raised invariant is a failed invariant
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(passed), detail))
    return results
