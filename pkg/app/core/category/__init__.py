# app/core/category/__init__.py
"""Finite graded categories with shift: HDF tables, Gr/Ev and Serre checks"""
from app.core.category.tables import (
    InvolutiveCategoryTable,
    LinearCategoryTable,
    ShiftData,
    SuperCategoryTable,
)
from app.core.category.hdf import build_hdf_category, close_under_shift, object_names
from app.core.category.completion import (
    TransportVerdict,
    even_subcategory,
    graded_dims_agree,
    hdf_transport_check,
    same_table,
    supercompletion,
)
from app.core.category.serre import (
    CalabiYauVerdict,
    SerreVerdict,
    calabi_yau_check,
    serre_check,
    serre_functor,
)

__all__ = [
    "InvolutiveCategoryTable",
    "LinearCategoryTable",
    "ShiftData",
    "SuperCategoryTable",
    "build_hdf_category",
    "close_under_shift",
    "object_names",
    "TransportVerdict",
    "even_subcategory",
    "graded_dims_agree",
    "hdf_transport_check",
    "same_table",
    "supercompletion",
    "CalabiYauVerdict",
    "SerreVerdict",
    "calabi_yau_check",
    "serre_check",
    "serre_functor",
]
