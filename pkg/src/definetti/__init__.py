"""Constrained de Finetti reductions and separability bounds, verified exactly at desk scale."""

from .operators import (
    DensityMatrix,
    Dims,
    HermitianOperator,
    KrausChannel,
    PermutationSpec,
    ResourceCapError,
    apply_channel,
    b_side_twirl,
    completely_depolarizing_channel,
    density,
    eig_hermitian,
    haar_moment_operator,
    haar_state_vector,
    hermitian,
    identity_channel,
    identity_operator,
    induced_mixed_state,
    max_side,
    min_eigenvalue,
    partial_trace,
    pauli_twirl_channel,
    permutation_twirl,
    permutation_unitary,
    permute_factors,
    pure_state_density,
    qc_dephasing_channel,
    random_state,
    set_max_side,
    stream,
    sym_projector,
    sym_rank,
    symmetric_state_vector,
    tensor,
    tensor_power,
)

__version__ = "0.1.0"
