# app/core/groebner/__init__.py
"""Multivariate polynomials over Q: Groebner bases, normal forms, membership"""
from app.core.groebner.rings import (
    Monomial,
    MonomialOrder,
    make_ring,
    ring_order,
    with_order,
    variable_names,
    to_fraction,
    to_domain,
    from_terms,
    to_terms,
    constant,
    monomial,
    coefficient,
    scale,
    total_degree,
    is_constant,
    monomials_up_to,
    format_poly,
    format_monomial,
    permutation_sign,
    poly_det,
)
from app.core.groebner.buchberger import GroebnerBasis, buchberger
from app.core.groebner.quotient import normal_form, in_ideal, pure_power_bounds, standard_monomials
from app.core.groebner.membership import lift_membership

__all__ = [
    "Monomial",
    "MonomialOrder",
    "make_ring",
    "ring_order",
    "with_order",
    "variable_names",
    "to_fraction",
    "to_domain",
    "from_terms",
    "to_terms",
    "constant",
    "monomial",
    "coefficient",
    "scale",
    "total_degree",
    "is_constant",
    "monomials_up_to",
    "format_poly",
    "format_monomial",
    "permutation_sign",
    "poly_det",
    "GroebnerBasis",
    "buchberger",
    "normal_form",
    "in_ideal",
    "pure_power_bounds",
    "standard_monomials",
    "lift_membership",
]
