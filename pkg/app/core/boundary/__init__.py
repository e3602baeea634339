# app/core/boundary/__init__.py
"""Matrix factorizations, Hom complexes, their cohomology and boundary traces"""
from app.core.boundary.polymatrix import PolyMatrix
from app.core.boundary.factorization import (
    MatrixFactorization,
    ShiftedMF,
    mf_validate,
    same_potential,
    shift_mf,
    shift_order,
    tensor_mf,
)
from app.core.boundary.hom_complex import (
    HomComplex2P,
    Morphism,
    compose,
    hom_complex,
    identity_morphism,
    is_cocycle,
    require_cocycle,
)
from app.core.boundary.cohomology import (
    HDFCohomology,
    HDFPart,
    HomBackend,
    compose_classes,
    default_truncation,
    hdf_cohomology,
)
from app.core.boundary.trace import (
    BoundaryGram,
    BoundaryTrace,
    boundary_gram,
    boundary_trace,
    coboundary_check,
    supertrace,
)
from app.core.boundary.shift import (
    ShiftCheck,
    TransportCheck,
    shift_compatibility,
    shift_morphism,
    shift_transport,
    shift_twist,
    shifted_dims,
    transport_check,
)
from app.core.boundary.periodic import (
    PeriodicComplex,
    PeriodicDoubleComplex,
    jacobian_reduced_complex,
    periodic_double_complex,
)

__all__ = [
    "PolyMatrix",
    "MatrixFactorization",
    "ShiftedMF",
    "mf_validate",
    "same_potential",
    "shift_mf",
    "shift_order",
    "tensor_mf",
    "HomComplex2P",
    "Morphism",
    "compose",
    "hom_complex",
    "identity_morphism",
    "is_cocycle",
    "require_cocycle",
    "HDFCohomology",
    "HDFPart",
    "HomBackend",
    "compose_classes",
    "default_truncation",
    "hdf_cohomology",
    "BoundaryGram",
    "BoundaryTrace",
    "boundary_gram",
    "boundary_trace",
    "coboundary_check",
    "supertrace",
    "ShiftCheck",
    "TransportCheck",
    "shift_compatibility",
    "shift_morphism",
    "shift_transport",
    "shift_twist",
    "shifted_dims",
    "transport_check",
    "PeriodicComplex",
    "PeriodicDoubleComplex",
    "jacobian_reduced_complex",
    "periodic_double_complex",
]
