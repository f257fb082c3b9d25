"""Gamma function of square complex matrices.

Three backends (Lanczos and Spouge rational approximations and a
reciprocal-series path that tolerates mixed-sign spectra), routed
through a blocked Schur-Parlett driver, with error bounds, the matrix
beta function, Frechet-derivative condition estimation, and a benchmark
harness.
"""

from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    MalformedInputError,
    MatGammaError,
    NegativeRealAxisError,
    OracleRefusedError,
    OverflowRangeError,
    PoleProximityError,
    PreconditionError,
    SingularMatrixError,
    SpectrumSplitError,
    SylvesterCollisionError,
)
from .linalg import (
    UNIT_ROUNDOFF,
    Norms,
    SchurForm,
    as_matrix,
    eigenvalues,
    inverse,
    multiply,
    norms,
    schur,
    solve,
    spectral_abscissa,
    spectral_radius,
)
from .matfun import expm, logm, power_matrix_matrix, power_scalar_matrix, sinm
from .scalar_gamma import (
    CoefficientTable,
    coefficient_table,
    incomplete_gamma_lower_scalar,
    incomplete_gamma_upper_scalar,
    lanczos_gamma_scalar,
    recip_coefficients,
    spouge_coefficient,
    spouge_gamma_scalar,
    zeta,
)
from .gamma_core import (
    GammaMethod,
    lanczos_gamma,
    lanczos_gamma_right,
    polyval_matrix,
    reciprocal_gamma,
    spouge_gamma,
    spouge_gamma_right,
)
from .schur_parlett import (
    BlockPartition,
    cluster_eigenvalues,
    gamma,
    parlett_recurrence,
    reorder_schur,
    sylvester_triangular,
)
from .analysis import (
    BoundReport,
    beta,
    cond_gamma,
    frechet_gamma,
    gamma_norm_bound,
    perturbation_bound,
    spouge_rel_bound,
    tail_bound,
    truncation_bound,
)

__version__ = "0.1.0"

__all__ = [
    "MatGammaError",
    "MalformedInputError",
    "DimensionMismatchError",
    "PoleProximityError",
    "ConvergenceError",
    "PreconditionError",
    "SingularMatrixError",
    "NegativeRealAxisError",
    "SpectrumSplitError",
    "SylvesterCollisionError",
    "OverflowRangeError",
    "OracleRefusedError",
    "UNIT_ROUNDOFF",
    "Norms",
    "SchurForm",
    "as_matrix",
    "eigenvalues",
    "inverse",
    "multiply",
    "norms",
    "schur",
    "solve",
    "spectral_abscissa",
    "spectral_radius",
    "expm",
    "logm",
    "power_matrix_matrix",
    "power_scalar_matrix",
    "sinm",
    "CoefficientTable",
    "coefficient_table",
    "incomplete_gamma_lower_scalar",
    "incomplete_gamma_upper_scalar",
    "lanczos_gamma_scalar",
    "recip_coefficients",
    "spouge_coefficient",
    "spouge_gamma_scalar",
    "zeta",
    "GammaMethod",
    "lanczos_gamma",
    "lanczos_gamma_right",
    "polyval_matrix",
    "reciprocal_gamma",
    "spouge_gamma",
    "spouge_gamma_right",
    "BlockPartition",
    "cluster_eigenvalues",
    "gamma",
    "parlett_recurrence",
    "reorder_schur",
    "sylvester_triangular",
    "BoundReport",
    "beta",
    "cond_gamma",
    "frechet_gamma",
    "gamma_norm_bound",
    "perturbation_bound",
    "spouge_rel_bound",
    "tail_bound",
    "truncation_bound",
    "__version__",
]
