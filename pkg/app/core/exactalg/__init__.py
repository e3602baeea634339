# app/core/exactalg/__init__.py
"""Exact linear algebra over Q and Q[x]"""
from app.core.exactalg.matrices import (
    ZERO,
    ONE,
    MatrixQ,
    RrefResult,
    EchelonBasis,
    as_fraction,
    to_sparse,
    from_sparse,
    rref,
    nullspace,
    sparse_nullspace,
    sparse_rank,
    solve,
)
from app.core.exactalg.smith import MatrixPolyUni, SmithForm, divides, smith_normal_form

__all__ = [
    "ZERO",
    "ONE",
    "MatrixQ",
    "RrefResult",
    "EchelonBasis",
    "as_fraction",
    "to_sparse",
    "from_sparse",
    "rref",
    "nullspace",
    "sparse_nullspace",
    "sparse_rank",
    "solve",
    "MatrixPolyUni",
    "SmithForm",
    "divides",
    "smith_normal_form",
]
