# app/core/homology/__init__.py
"""Finite complexes, double complexes and their spectral sequences"""
from app.core.homology.complexes import (
    CohomologyGroup,
    DoubleComplex,
    FiniteComplex,
    QuotientSpace,
    TotalBlock,
    cohomology,
    cohomology_dims,
    dual_complex,
    total_complex,
    total_layout,
)
from app.core.homology.spectral import (
    FilteredCohomology,
    FilteredTotal,
    SpectralPage,
    SpectralSequence,
    spectral_pages,
    support_condition,
)
from app.core.homology.compare import (
    DoubleComplexMorphism,
    FilteredComparison,
    FilteredVerdict,
    filtered_compare,
    identity_morphism,
)

__all__ = [
    "CohomologyGroup",
    "DoubleComplex",
    "FiniteComplex",
    "QuotientSpace",
    "TotalBlock",
    "cohomology",
    "cohomology_dims",
    "dual_complex",
    "total_complex",
    "total_layout",
    "FilteredCohomology",
    "FilteredTotal",
    "SpectralPage",
    "SpectralSequence",
    "spectral_pages",
    "support_condition",
    "DoubleComplexMorphism",
    "FilteredComparison",
    "FilteredVerdict",
    "filtered_compare",
    "identity_morphism",
]
