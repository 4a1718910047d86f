"""Interference tables, interference orders, temporal correlations and
tomography across the three theories."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from densitycube.cube import HermitianCube, ValidationError, mix
from densitycube.experiments import (
    ExperimentRecord,
    SlitConfig,
    all_masks,
    apply_transform_on_paths,
    embed_on_paths,
    interference_orders,
    interference_table,
    interferometer_run,
    leggett_garg_run,
    leggett_garg_sweep,
    pairwise_interference,
    simulate_counts,
    sorkin_quantity,
    sorkin_sweep,
    tomography_estimate,
    tomography_reconstruct,
    transformed_detector_probs,
)
from densitycube.sampling import random_pure_state
from densitycube.states import OMEGA, TRIPLE_MAGNITUDE, nonquantum_state, rho_n_of_psi

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


def test_slit_config_parsing():
    config = SlitConfig.from_string("100")
    assert config.open_slits == (2, 3)
    assert config.n_closed == 1
    assert str(config) == "100"
    with pytest.raises(ValidationError):
        SlitConfig.from_string("10x")
    with pytest.raises(ValidationError):
        SlitConfig((0,))


def test_cube_triple_slit_table_matches_update_rule():
    table = interference_table("cube", 3)
    for mask, expected in TRIPLE_SLIT_EXPECTED.items():
        assert table[mask][0] == pytest.approx(expected, abs=1e-12), mask


def test_cube_triple_slit_third_order_value():
    table = interference_table("cube", 3)
    i123 = sorkin_quantity({m: row[0] for m, row in table.items()}, 3)
    assert i123 == pytest.approx(0.5, abs=1e-12)


def test_interferometer_run_examples():
    assert interferometer_run("cube", "100", 1) == pytest.approx(0.5, abs=1e-12)
    assert interferometer_run("cube", "111", 1) == 0.0
    assert interferometer_run("cube", "000", 1) == pytest.approx(1.0, abs=1e-12)
    assert interferometer_run("cube", "101", 1) == pytest.approx(0.25, abs=1e-12)


def test_interferometer_run_validates_inputs():
    with pytest.raises(ValidationError):
        interferometer_run("cube", "100", 4)
    with pytest.raises(ValidationError):
        interferometer_run("bogus", "100", 1)


def test_joint_probabilities_sum_to_pass_probability():
    table = interference_table("cube", 3)
    # detector marginals of each config equal the filter pass probability
    state_after = nonquantum_state(1)  # image of e1 under the transform
    for mask, row in table.items():
        config = SlitConfig.from_string(mask)
        p_pass = sum(state_after.probabilities()[s - 1] for s in config.open_slits)
        assert sum(row) == pytest.approx(p_pass, abs=1e-12)


def test_sorkin_quantity_requires_full_table():
    with pytest.raises(ValidationError):
        sorkin_quantity({"00": 1.0, "01": 0.5}, 2)


@given(
    st.lists(
        st.floats(min_value=0.0, max_value=1.0, allow_nan=False), min_size=3, max_size=3
    )
)
def test_sorkin_quantity_vanishes_on_additive_tables(weights):
    # per-slit contributions only: p(config) = sum of open-slit terms
    table = {}
    for mask in all_masks(3):
        table[mask] = sum(
            w for bit, w in zip(mask, weights) if bit == "0"
        )
    assert sorkin_quantity(table, 3) == pytest.approx(0.0, abs=1e-12)
    for a, b in ((1, 2), (1, 3), (2, 3)):
        assert pairwise_interference(table, 3, a, b) == pytest.approx(0.0, abs=1e-12)


def test_two_slit_classical_table_has_no_interference():
    table = interference_table("classical", 2)
    for d in (0, 1):
        i12 = sorkin_quantity({m: row[d] for m, row in table.items()}, 2)
        assert i12 == pytest.approx(0.0, abs=1e-12)


def test_quantum_triple_slit_default_instance():
    table = interference_table("quantum", 3)
    orders = interference_orders(table, 3)
    assert max(abs(v) for v in orders["full_order"]["per_detector"]) < 1e-12


def test_sorkin_sweep_quantum_third_order_null(rng):
    res = sorkin_sweep("quantum", 3, 200, seed=11)
    assert res.max_abs_full < 1e-10
    assert res.max_abs_pairwise > 1e-2


def test_sorkin_sweep_classical_null():
    res = sorkin_sweep("classical", 2, 200, seed=12)
    assert res.max_abs_full < 1e-12


def test_sorkin_sweep_cube_reaches_one_half():
    res = sorkin_sweep("cube", 3, 50, seed=13)
    assert res.max_abs_full >= 0.5 - 1e-12


def test_fourth_order_vanishes_for_every_theory():
    # rank-3 state tensors cannot support genuine four-slit interference
    assert sorkin_sweep("quantum", 4, 100, seed=14).max_abs_full < 1e-10
    assert sorkin_sweep("cube", 4, 100, seed=15).max_abs_full < 1e-10
    assert sorkin_sweep("classical", 4, 100, seed=16).max_abs_full < 1e-12


def test_sorkin_sweep_rejects_unsupported_pairs():
    with pytest.raises(ValidationError):
        sorkin_sweep("cube", 2, 10)
    with pytest.raises(ValidationError):
        sorkin_sweep("quantum", 5, 10)


def test_embed_on_paths_and_block_transform():
    rho = embed_on_paths(nonquantum_state(1), (1, 2, 3), 4)
    assert np.allclose(rho.diag, [0.0, 0.5, 0.5, 0.0], atol=0.0)
    assert rho.triple[0] == nonquantum_state(1).triple[0]

    e1 = HermitianCube.basis_state(4, 1)
    out = apply_transform_on_paths(e1, (1, 2, 3))
    assert out.allclose(rho, 1e-15)
    back = apply_transform_on_paths(out, (1, 2, 3))
    assert back.allclose(e1, 1e-12)
    # spectator path keeps its weight
    e4 = HermitianCube.basis_state(4, 4)
    assert apply_transform_on_paths(e4, (1, 2, 3)) == e4


def test_cube_four_path_table_is_valid():
    table = interference_table("cube", 4)
    for mask, row in table.items():
        for value in row:
            assert -1e-12 <= value <= 1.0 + 1e-12
    assert table["0000"][0] == pytest.approx(1.0, abs=1e-12)
    orders = interference_orders(table, 4)
    assert max(abs(v) for v in orders["full_order"]["per_detector"]) < 1e-12


def test_leggett_garg_cube_is_exact():
    res = leggett_garg_run("cube")
    assert (res.C12, res.C23, res.C34, res.C14) == (-1.0, 0.0, -1.0, -1.0)
    assert res.K == 3.0


def test_leggett_garg_branches_are_normalised():
    # classical and quantum correlations are averages of +-1 outcomes
    for theory in ("classical", "quantum", "cube"):
        res = leggett_garg_run(theory)
        for value in (res.C12, res.C23, res.C34, res.C14):
            assert -1.0 - 1e-12 <= value <= 1.0 + 1e-12


def test_leggett_garg_branch_probabilities_sum_to_one():
    from densitycube.experiments import _LG_PAIRS, _lg_ops

    for theory in ("classical", "quantum", "cube"):
        initial, evolve, measure = _lg_ops(theory, None)
        for (i, j) in _LG_PAIRS:
            state = initial
            for _ in range(i - 1):
                state = evolve(state)
            total = 0.0
            for _, p_a, post in measure(state):
                if post is None:
                    continue
                mid = post
                for _ in range(j - i):
                    mid = evolve(mid)
                total += p_a * sum(p_b for _, p_b, _ in measure(mid))
            assert total == pytest.approx(1.0, abs=1e-12), (theory, i, j)


def test_leggett_garg_classical_bound():
    sweep = leggett_garg_sweep("classical", 300, seed=21)
    assert sweep.max_K <= 2.0 + 1e-12


def test_leggett_garg_quantum_bound():
    sweep = leggett_garg_sweep("quantum", 300, seed=22)
    assert sweep.max_K <= 2.0 * math.sqrt(2.0) + 1e-9


def test_transformed_probs_match_span_transform_for_span_states(rng):
    from densitycube.dynamics import apply_transform
    from densitycube.sampling import random_span_state

    for _ in range(50):
        state = random_span_state(rng)
        mu = transformed_detector_probs(state)
        direct = apply_transform(state).probabilities()
        assert np.allclose(mu, direct, atol=1e-12)


def test_tomography_exact_for_named_states():
    for cube, expected in [
        (nonquantum_state(1), TRIPLE_MAGNITUDE),
        (nonquantum_state(2), OMEGA * TRIPLE_MAGNITUDE),
        (nonquantum_state(3), OMEGA.conjugate() * TRIPLE_MAGNITUDE),
        (HermitianCube.basis_state(3, 1), 0.0),
    ]:
        fit = tomography_reconstruct(
            transformed_detector_probs(cube), cube.probabilities()
        )
        assert abs(fit.z - expected) < 1e-12
        assert fit.residual < 1e-12


def test_tomography_exact_for_family_states(rng):
    for _ in range(50):
        psi = random_pure_state(3, rng)
        n = int(rng.integers(1, 4))
        cube = rho_n_of_psi(psi, n)
        fit = tomography_reconstruct(
            transformed_detector_probs(cube), cube.probabilities()
        )
        assert abs(fit.z - complex(cube.triple[0])) < 1e-12


def test_tomography_of_embedded_quantum_states_returns_zero(rng):
    # states on the z = 0 slice reconstruct to exactly z = 0 even when their
    # pair elements are nonzero
    from densitycube.quantum import embed_matrix
    from densitycube.sampling import random_density_matrix

    for _ in range(50):
        cube = embed_matrix(random_density_matrix(3, rng))
        fit = tomography_reconstruct(
            transformed_detector_probs(cube), cube.probabilities()
        )
        assert abs(fit.z) < 1e-12


def test_interferometer_run_with_seed_is_deterministic():
    first = interferometer_run("quantum", "010", 2, seed=31)
    second = interferometer_run("quantum", "010", 2, seed=31)
    other = interferometer_run("quantum", "010", 2, seed=32)
    assert first == second
    assert 0.0 <= first <= 1.0
    assert first != other  # different instance drawn


def test_tomography_validates_probability_vectors():
    with pytest.raises(ValidationError):
        tomography_reconstruct([0.5, 0.5, 0.5], [1.0, 0.0, 0.0])
    with pytest.raises(ValidationError):
        tomography_reconstruct([1.0, 0.0, 0.0], [1.0, -0.4, 0.4])


def test_simulate_counts_deterministic_cases():
    counts = simulate_counts(HermitianCube.basis_state(3, 2), "direct", 100, seed=1)
    assert counts.tolist() == [0, 100, 0]
    counts = simulate_counts(nonquantum_state(1), "after_T", 500, seed=2)
    assert counts.tolist() == [500, 0, 0]  # the transform sends rho1 back to e1
    with pytest.raises(ValidationError):
        simulate_counts(nonquantum_state(1), "sideways", 10, seed=3)


def test_simulate_counts_concentration():
    mixed = mix(
        [(0.5, HermitianCube.basis_state(3, 2)), (0.5, HermitianCube.basis_state(3, 3))]
    )
    counts = simulate_counts(mixed, "after_T", 1_000_000, seed=42)
    fraction = counts[0] / 1_000_000
    assert abs(fraction - 0.5) < 0.002  # binomial 3-sigma band around 1/2


def test_simulate_counts_reproducible():
    a = simulate_counts(nonquantum_state(2), "after_T", 10_000, seed=77)
    b = simulate_counts(nonquantum_state(2), "after_T", 10_000, seed=77)
    assert np.array_equal(a, b)


def test_tomography_estimate_converges():
    state = rho_n_of_psi(np.ones(3) / math.sqrt(3.0), 2)
    est = tomography_estimate(state, 100_000, seed=7)
    assert abs(est["z_hat"] - OMEGA.conjugate() * TRIPLE_MAGNITUDE) < 5e-3


def test_experiment_record_validation():
    table = interference_table("cube", 3)
    record = ExperimentRecord("interference", "cube", {"k": 3}, table, {}, {})
    doc = record.to_dict({"command": "interfere"})
    assert doc["schema"].startswith("densitycube")
    rows = record.csv_rows()
    assert rows[0] == ("config", "detector", "probability")
    assert len(rows) == 1 + 8 * 3

    with pytest.raises(ValidationError):
        ExperimentRecord("interference", "cube", {"k": 3}, {"000": [1.2, 0, 0]}, {})
    bad = dict(table)
    bad.pop("111")
    with pytest.raises(ValidationError):
        ExperimentRecord("interference", "cube", {"k": 3}, bad, {})
