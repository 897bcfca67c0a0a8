"""
切片与确定族模块
"""

from .slices import (
    contains_in_conv,
    daugavet_slice_test,
    determining_falsifier,
    separation_margin,
    slice,
    slice_indices,
    strongly_exposed_check,
)

__all__ = [
    "contains_in_conv",
    "daugavet_slice_test",
    "determining_falsifier",
    "separation_margin",
    "slice",
    "slice_indices",
    "strongly_exposed_check",
]
