"""Max-times algebra: spectral radius, joint spectral radius, Barabanov norms.

The library works over the semiring of nonnegative reals with maximum as
addition and ordinary multiplication; the joint spectral radius of a finite
set of matrices reduces to the cycle mean of their entrywise maximum, which
makes radii, extremal norms and optimal products exactly computable.
"""

from .errors import (
    BudgetError,
    CertificateError,
    DegenerateSpectrumError,
    DimensionMismatchError,
    DivergenceError,
    GenerationError,
    InvalidEntryError,
    IrreducibilityError,
    MaxAlgebraError,
    NonUniqueCriticalError,
    SetFileError,
    ToleranceError,
)
from .geometry import (
    DominanceResult,
    EccentricityValue,
    HausdorffReport,
    MembershipCertificate,
    eccentricity,
    hausdorff,
    hull_membership,
    strict_dominance,
)
from .jsr import (
    FinitenessCertificate,
    JsrBounds,
    MatrixSet,
    NonexistenceCertificate,
    VerificationResult,
    WeightedMaxNorm,
    aggregate,
    barabanov_nonexistence,
    barabanov_norm,
    conv_invariance_check,
    finiteness_product,
    induced_norm,
    iter_products,
    jsr,
    jsr_bounds,
    verify_barabanov,
    verify_extremal,
)
from .kernels import BACKEND
from .maxcore import (
    MaxMatrix,
    MaxPermutation,
    MaxVector,
    apply,
    kleene_star,
    left_apply,
    max_add,
    max_mul,
    max_power,
    perm_conjugate,
    perm_inverse,
)
from .oracles import InstanceSpec, bf_cycle_mean, bf_gsr_truncation, enumerate_cycles, generate
from .regularity import (
    RegularityProbe,
    eccentricity_along_sequence,
    probe_matrix_regularity,
    probe_set_regularity,
)
from .spectral import (
    CycleMeanResult,
    EigenPair,
    FrobeniusForm,
    cycle_mean,
    frobenius_form,
    is_irreducible,
    mu_gradient,
    principal_eigenpair,
)
from .tolerance import DEFAULT_TOLERANCE, get_tolerance, set_tolerance

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DEFAULT_TOLERANCE",
    "BudgetError",
    "CertificateError",
    "CycleMeanResult",
    "DegenerateSpectrumError",
    "DimensionMismatchError",
    "DivergenceError",
    "DominanceResult",
    "EccentricityValue",
    "EigenPair",
    "FinitenessCertificate",
    "FrobeniusForm",
    "GenerationError",
    "HausdorffReport",
    "InstanceSpec",
    "InvalidEntryError",
    "IrreducibilityError",
    "JsrBounds",
    "MatrixSet",
    "MaxAlgebraError",
    "MaxMatrix",
    "MaxPermutation",
    "MaxVector",
    "MembershipCertificate",
    "NonUniqueCriticalError",
    "NonexistenceCertificate",
    "RegularityProbe",
    "SetFileError",
    "ToleranceError",
    "VerificationResult",
    "WeightedMaxNorm",
    "aggregate",
    "apply",
    "barabanov_nonexistence",
    "barabanov_norm",
    "bf_cycle_mean",
    "bf_gsr_truncation",
    "conv_invariance_check",
    "cycle_mean",
    "eccentricity",
    "eccentricity_along_sequence",
    "enumerate_cycles",
    "finiteness_product",
    "frobenius_form",
    "generate",
    "get_tolerance",
    "hausdorff",
    "hull_membership",
    "induced_norm",
    "is_irreducible",
    "iter_products",
    "jsr",
    "jsr_bounds",
    "kleene_star",
    "left_apply",
    "max_add",
    "max_mul",
    "max_power",
    "mu_gradient",
    "perm_conjugate",
    "perm_inverse",
    "principal_eigenpair",
    "probe_matrix_regularity",
    "probe_set_regularity",
    "set_tolerance",
    "strict_dominance",
    "verify_barabanov",
    "verify_extremal",
]
