"""Minimum modulus, Moore-Penrose inverses and minimum attainment of operators."""

from .attainment import (
    AMMode,
    AMVerdict,
    AttainmentCertificate,
    FailedCondition,
    adjoint_duality_check,
    am_truncation_audit,
    classify_am,
    is_min_attaining,
    is_norm_attaining_spec,
    min_attaining_equivalences,
    reduced_decomposition_check,
    restricted_min,
    restriction_duality_check,
    witness_spectral_check,
)
from .errors import MinModError
from .factorizations import (
    bounded_transform,
    inverse_transform,
    least_squares_min_norm,
    modulus,
    mp_modulus_identities,
    penrose_residuals,
    pinv_identity_residuals,
    polar,
    pseudoinverse,
    transform_moduli_check,
)
from .linalg import eigh, min_modulus, norm2, orthonormalize, svd
from .moduli import ModuliReport, moduli, reduced_minimum_modulus
from .operators import (
    INFINITE,
    Atom,
    DiagonalOperator,
    SpectrumSpec,
    Tail,
    TailKind,
    adjoint,
    reciprocal_spectrum,
    restrict,
    truncate,
    validate_spectrum,
)
from .sturm import SLProblem, SLSpectrumReport, const, poly, sl_eigenvalues

__version__ = "0.1.0"

__all__ = [
    "adjoint",
    "adjoint_duality_check",
    "am_truncation_audit",
    "AMMode",
    "AMVerdict",
    "Atom",
    "AttainmentCertificate",
    "bounded_transform",
    "classify_am",
    "const",
    "DiagonalOperator",
    "eigh",
    "FailedCondition",
    "INFINITE",
    "inverse_transform",
    "is_min_attaining",
    "is_norm_attaining_spec",
    "least_squares_min_norm",
    "min_attaining_equivalences",
    "min_modulus",
    "MinModError",
    "moduli",
    "ModuliReport",
    "modulus",
    "mp_modulus_identities",
    "norm2",
    "orthonormalize",
    "penrose_residuals",
    "pinv_identity_residuals",
    "polar",
    "poly",
    "pseudoinverse",
    "reciprocal_spectrum",
    "reduced_decomposition_check",
    "reduced_minimum_modulus",
    "restrict",
    "restricted_min",
    "restriction_duality_check",
    "sl_eigenvalues",
    "SLProblem",
    "SLSpectrumReport",
    "SpectrumSpec",
    "svd",
    "Tail",
    "TailKind",
    "transform_moduli_check",
    "truncate",
    "validate_spectrum",
    "witness_spectral_check",
]
