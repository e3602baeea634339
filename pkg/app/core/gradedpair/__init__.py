# app/core/gradedpair/__init__.py
"""Fiberwise graded duality: ev_Q, the Serre pairing sign and reduced contraction"""
from app.core.gradedpair.exterior import ExteriorElement, basis, contract, full_basis, interior, merge_sign, pair
from app.core.gradedpair.pairing import (
    ContractionCheck,
    FormComponent,
    GradedVS,
    Grading,
    HomogeneousElement,
    TriGradedElement,
    contraction_identity_battery,
    ev_matrix,
    ev_polyvector,
    ev_q,
    is_signed_permutation,
    koszul_sign,
    reduced_contraction,
    reduced_contraction_identity_check,
    serre_pair,
    serre_sign,
)

__all__ = [
    "ExteriorElement",
    "basis",
    "contract",
    "full_basis",
    "interior",
    "merge_sign",
    "pair",
    "ContractionCheck",
    "FormComponent",
    "GradedVS",
    "Grading",
    "HomogeneousElement",
    "TriGradedElement",
    "contraction_identity_battery",
    "ev_matrix",
    "ev_polyvector",
    "ev_q",
    "is_signed_permutation",
    "koszul_sign",
    "reduced_contraction",
    "reduced_contraction_identity_check",
    "serre_pair",
    "serre_sign",
]
