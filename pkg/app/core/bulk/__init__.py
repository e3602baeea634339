# app/core/bulk/__init__.py
"""Bulk sector: Jacobian ideal, Milnor algebra, Koszul complex and trace"""
from app.core.bulk.jacobian import JacobianData, LGPair, critical_locus_finite, jacobian_ideal
from app.core.bulk.milnor import MilnorAlgebra, eliminant, hessian_class, is_local, milnor_algebra, socle
from app.core.bulk.koszul import KoszulResult, KoszulTruncation, koszul_cohomology_truncated, koszul_complex
from app.core.bulk.trace import (
    BulkGram,
    BulkTrace,
    TraceBackend,
    bulk_gram,
    bulk_trace,
    frobenius_check,
    ideal_check,
    scaling_check,
)

__all__ = [
    "JacobianData",
    "LGPair",
    "critical_locus_finite",
    "jacobian_ideal",
    "MilnorAlgebra",
    "eliminant",
    "hessian_class",
    "is_local",
    "milnor_algebra",
    "socle",
    "KoszulResult",
    "KoszulTruncation",
    "koszul_cohomology_truncated",
    "koszul_complex",
    "BulkGram",
    "BulkTrace",
    "TraceBackend",
    "bulk_gram",
    "bulk_trace",
    "frobenius_check",
    "ideal_check",
    "scaling_check",
]
