"""Simulation engine for interference-order hierarchies.

States are rank-3 Hermitian tensors ("density cubes") generalising density
matrices; the package provides the tensor algebra, quantum and classical
baselines, the non-quantum state families and dynamics, projective
measurement with the generalized update rule, and the three experiment
protocols (multi-slit interference orders, two-time correlations,
triple-element tomography).
"""

from .cube import (
    ALGEBRA_TOL,
    STATE_TOL,
    HermitianCube,
    ValidationError,
    compress_full,
    expand_full,
    inner,
    mix,
    pairwise_positivity,
    parameter_count,
)
from .dynamics import (
    apply_transform,
    nonquantum_coefficients,
    project,
    qutrit_obstruction_scan,
    reconstruct,
    standard_transform,
    subspace_basis,
    verify_transform,
    verify_transform_columns,
)
from .measurement import (
    BasisPartition,
    MeasurementOutcome,
    luders_update,
    outcome_probabilities,
    selective_measure,
)
from .quantum import (
    dft_unitary,
    embed_bloch,
    embed_matrix,
    extract_bloch,
    extract_quantum_part,
    pauli_cubes,
    quantum_luders,
)
from .states import (
    OMEGA,
    TRIPLE_MAGNITUDE,
    CubeBasis,
    family_overlap,
    nonquantum_basis,
    nonquantum_state,
    resolve_state,
    rho_n_of_psi,
    standard_basis,
)
from .experiments import (
    ExperimentRecord,
    LeggettGargResult,
    SlitConfig,
    SweepResult,
    TomographyFit,
    all_masks,
    apply_transform_on_paths,
    interference_orders,
    interference_table,
    interferometer_run,
    leggett_garg_run,
    leggett_garg_sweep,
    pairwise_interference,
    simulate_counts,
    sorkin_quantity,
    sorkin_sweep,
    tomography_reconstruct,
    transformed_detector_probs,
)

__version__ = "0.1.0"
