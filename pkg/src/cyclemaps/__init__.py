"""Positive maps on matrix algebras built from permutation cycle data.

The package constructs the two-parameter family of linear maps
Theta(X) = diag(a*x_ii + c_i*x_{sigma(i),sigma(i)}) - X on n x n complex
matrices, classifies each member (positivity, 2-positivity, complete
positivity, atomicity, decomposability) with machine-checkable certificates,
and produces the two derived quantum-information artifacts: the separable
structural physical approximation and the optimal entanglement witness.
"""

__version__ = "0.1.0"

from .classify import (
    ClassificationReport,
    DecomposabilityCertificate,
    PositivityEvidence,
    Verdict,
    atomic_uniform_c,
    atomic_verdict,
    classify_map,
    cp_verdict,
    decompose_involution,
    elementary_symmetric,
    geometric_mean_c,
    positivity_threshold,
    positivity_verdict,
    schur_matrix,
    symmetric_F,
    two_positive_verdict,
    verify_positivity_numeric,
)
from .dmap import ChoiMatrix, MapParams, choi, d_matrix, delta_apply, delta_n, theta_apply
from .errors import ContractError, ParameterError, PreconditionError
from .matlin import (
    SpectrumResult,
    basis_vector,
    hermitian_spectrum,
    identity_matrix,
    is_hermitian,
    is_psd,
    kron,
    matrix_from_json,
    matrix_to_json,
    matrix_unit,
    min_eigenvalue,
    negative_part,
    partial_transpose,
    require_hermitian,
    schur_product,
)
from .perm import (
    CycleDecomposition,
    Permutation,
    cycle_decompose,
    fixed_points,
    format_permutation,
    from_cycles,
    identity,
    is_involution,
    is_single_cycle,
    min_max_cycle_length,
    parse_permutation,
    tau,
)
from .spa import (
    SeparableDecomposition,
    SpaState,
    pair_block,
    pair_embedding,
    ppt_check,
    r_matrix,
    separable_decomposition,
    spa_interpolation,
    spa_state,
)
from .witness import (
    OptimalityCertificate,
    ProductVector,
    certify_optimality,
    expectation_value,
    maximally_entangled_state,
    phase_vector,
    spanning_generators,
    witness,
)

__all__ = [
    "__version__",
    "ChoiMatrix",
    "ClassificationReport",
    "ContractError",
    "CycleDecomposition",
    "DecomposabilityCertificate",
    "MapParams",
    "OptimalityCertificate",
    "ParameterError",
    "Permutation",
    "PositivityEvidence",
    "PreconditionError",
    "ProductVector",
    "SeparableDecomposition",
    "SpaState",
    "SpectrumResult",
    "Verdict",
    "atomic_uniform_c",
    "atomic_verdict",
    "basis_vector",
    "certify_optimality",
    "choi",
    "classify_map",
    "cp_verdict",
    "cycle_decompose",
    "d_matrix",
    "decompose_involution",
    "delta_apply",
    "delta_n",
    "elementary_symmetric",
    "expectation_value",
    "fixed_points",
    "format_permutation",
    "from_cycles",
    "geometric_mean_c",
    "hermitian_spectrum",
    "identity",
    "identity_matrix",
    "is_hermitian",
    "is_involution",
    "is_psd",
    "is_single_cycle",
    "kron",
    "matrix_from_json",
    "matrix_to_json",
    "matrix_unit",
    "maximally_entangled_state",
    "min_eigenvalue",
    "min_max_cycle_length",
    "negative_part",
    "pair_block",
    "pair_embedding",
    "parse_permutation",
    "partial_transpose",
    "phase_vector",
    "positivity_threshold",
    "positivity_verdict",
    "ppt_check",
    "r_matrix",
    "require_hermitian",
    "schur_matrix",
    "schur_product",
    "separable_decomposition",
    "spa_interpolation",
    "spa_state",
    "spanning_generators",
    "symmetric_F",
    "tau",
    "theta_apply",
    "two_positive_verdict",
    "verify_positivity_numeric",
    "witness",
]
