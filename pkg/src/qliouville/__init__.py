"""Spectral toolkit for metric-intertwined (quasi-Hermitian) Liouvillians.

Builds Liouvillian superoperators in matrix-action and Kronecker form,
validates positive-definite metrics and their operator-space lifts,
constructs biorthogonal eigen-families and their rank-one Liouville
eigen-matrices, and verifies the algebraic identities connecting them all
at finite truncation: unitary equivalence of the two superoperator forms,
metric intertwining at both levels, biorthogonality, completeness, and
spectral-expansion reconstruction.
"""

from .errors import (
    BiorthogonalityError,
    DimensionMismatchError,
    EtaPoleError,
    IllConditionedMetricError,
    NonRealRegimeError,
    NotHermitianError,
    NotPositiveDefiniteError,
    NotQuasiHermitianError,
    NotRealEntriesError,
    NotSymmetricError,
    ToolkitError,
)
from .linalg import (
    conj_matrix,
    conj_vector,
    eig_hermitian,
    expm_hermitian,
    hs_inner,
    kron,
    sqrtm_spd,
)
from .rigging import (
    SuperFunctional,
    double_ket,
    dual_apply,
    dyad,
    matricize,
    super_bra,
    super_ket,
    vectorize,
)
from .liouvillian import (
    SuperOperator,
    adjoint_liouville_matrix,
    adjoint_liouvillian,
    apply_liouvillian,
    build_liouvillian,
    identity_superoperator,
    liouville_matrix,
    unitary_equivalence_residual,
)
from .metric import (
    MetricOperator,
    identity_metric,
    liouville_intertwining_residual,
    quasi_hermiticity_residual,
    validate_metric,
)
from .spectral import (
    BiorthogonalSystem,
    ExpansionReport,
    LiouvilleSpectrum,
    build_liouville_spectrum,
    completeness_residual,
    dense_liouville_eigenvalues,
    expand_operator,
    inner_product_reconstruction,
    multiset_match_residual,
    solve_quasi_hermitian,
)
from .models import (
    OscillatorSpec,
    SwansonSpec,
    build_analytic_metric,
    build_hermitian_reference,
    build_ho,
    build_ladder,
    build_similarity_exact,
    build_swanson,
    classify_spacing,
    interior_drift,
    swanson_scalars,
    swanson_spectrum,
)
from .prng import SplitMix64

__version__ = "0.1.0"

__all__ = [
    "BiorthogonalSystem",
    "BiorthogonalityError",
    "DimensionMismatchError",
    "EtaPoleError",
    "ExpansionReport",
    "IllConditionedMetricError",
    "LiouvilleSpectrum",
    "MetricOperator",
    "NonRealRegimeError",
    "NotHermitianError",
    "NotPositiveDefiniteError",
    "NotQuasiHermitianError",
    "NotRealEntriesError",
    "NotSymmetricError",
    "OscillatorSpec",
    "SplitMix64",
    "SuperFunctional",
    "SuperOperator",
    "SwansonSpec",
    "ToolkitError",
    "adjoint_liouville_matrix",
    "adjoint_liouvillian",
    "apply_liouvillian",
    "build_analytic_metric",
    "build_hermitian_reference",
    "build_ho",
    "build_ladder",
    "build_liouville_spectrum",
    "build_liouvillian",
    "build_similarity_exact",
    "build_swanson",
    "classify_spacing",
    "completeness_residual",
    "conj_matrix",
    "conj_vector",
    "dense_liouville_eigenvalues",
    "double_ket",
    "dual_apply",
    "dyad",
    "eig_hermitian",
    "expand_operator",
    "expm_hermitian",
    "hs_inner",
    "identity_metric",
    "identity_superoperator",
    "inner_product_reconstruction",
    "interior_drift",
    "kron",
    "liouville_intertwining_residual",
    "liouville_matrix",
    "matricize",
    "multiset_match_residual",
    "quasi_hermiticity_residual",
    "solve_quasi_hermitian",
    "sqrtm_spd",
    "super_bra",
    "super_ket",
    "swanson_scalars",
    "swanson_spectrum",
    "unitary_equivalence_residual",
    "validate_metric",
    "vectorize",
]
