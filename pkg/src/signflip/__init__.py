"""Sign-flip symmetry groups, equivariance tests and fourth-order stencils.

The package decides matrix symmetry (and normality) by commutation with a
conjugated sign-flip group, provides the cyclic Jacobi eigensolvers that
supply the group's basis, parses and differentiates scalar expressions with
hyper-dual numbers, and combines the pieces into a four-point difference
stencil whose value isolates the fourth-order Taylor remainder.
"""

from .expr import (
    Binary,
    Call,
    DomainError,
    Expression,
    HyperDual,
    Neg,
    Number,
    ParseError,
    UnknownIdentifierError,
    Var,
    VarIndexError,
    evaluate,
    gradient,
    hessian,
    parse,
    to_string,
)
from .linalg import (
    DimensionMismatchError,
    DimensionTooLargeError,
    EigenDecomposition,
    MAX_EIGEN_N,
    NoConvergenceError,
    NotHermitianError,
    NotSymmetricError,
    commutator_norm,
    frobenius,
    hermitian_eigen,
    is_diagonal,
    is_hermitian,
    is_normal,
    is_orthogonal,
    is_symmetric,
    is_unitary,
    multiply,
    off_diagonal_norm,
    symmetric_eigen,
)
from .matio import MatrixFormatError, format_matrix, parse_matrix, read_matrix, write_matrix
from .signgroup import (
    ConjugatedSignGroup,
    GroupAudit,
    NormalityCheck,
    NotOrthogonalError,
    NotUnitaryError,
    SignGroupElement,
    SignPattern,
    SymmetryCheck,
    all_patterns,
    commutes_with_sign_group,
    conjugated_element,
    conjugated_group,
    default_tolerance,
    enumerate_group,
    group_properties_check,
    is_equivariant,
    max_generator_commutator,
    normality_via_equivariance,
    sign_matrix,
    symmetry_via_equivariance,
)
from .stencil import (
    AllBelowNoiseFloorError,
    DEFAULT_SCALES,
    DEGENERACY_TOL,
    NOISE_FLOOR_COEFF,
    ScaleRecord,
    StencilInput,
    StencilReport,
    StencilWarning,
    degeneracy_check,
    four_point_stencil,
    hessian_sign_group,
    order_estimate,
    second_difference,
)

__version__ = "0.1.0"

__all__ = [
    "AllBelowNoiseFloorError",
    "Binary",
    "Call",
    "ConjugatedSignGroup",
    "DEFAULT_SCALES",
    "DEGENERACY_TOL",
    "DimensionMismatchError",
    "DimensionTooLargeError",
    "DomainError",
    "EigenDecomposition",
    "Expression",
    "GroupAudit",
    "HyperDual",
    "MAX_EIGEN_N",
    "MatrixFormatError",
    "NOISE_FLOOR_COEFF",
    "Neg",
    "NoConvergenceError",
    "NormalityCheck",
    "NotHermitianError",
    "NotOrthogonalError",
    "NotSymmetricError",
    "NotUnitaryError",
    "Number",
    "ParseError",
    "ScaleRecord",
    "SignGroupElement",
    "SignPattern",
    "StencilInput",
    "StencilReport",
    "StencilWarning",
    "SymmetryCheck",
    "UnknownIdentifierError",
    "Var",
    "VarIndexError",
    "all_patterns",
    "commutator_norm",
    "commutes_with_sign_group",
    "conjugated_element",
    "conjugated_group",
    "default_tolerance",
    "degeneracy_check",
    "enumerate_group",
    "evaluate",
    "format_matrix",
    "four_point_stencil",
    "frobenius",
    "gradient",
    "group_properties_check",
    "hermitian_eigen",
    "hessian",
    "hessian_sign_group",
    "is_diagonal",
    "is_equivariant",
    "is_hermitian",
    "is_normal",
    "is_orthogonal",
    "is_symmetric",
    "is_unitary",
    "max_generator_commutator",
    "multiply",
    "normality_via_equivariance",
    "off_diagonal_norm",
    "order_estimate",
    "parse",
    "parse_matrix",
    "read_matrix",
    "second_difference",
    "sign_matrix",
    "symmetric_eigen",
    "symmetry_via_equivariance",
    "to_string",
    "write_matrix",
]
