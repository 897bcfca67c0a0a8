"""
数值域与数值指数模块
"""

from .index import (
    index_upper_certificate,
    numerical_index,
    numerical_index_estimate,
    numerical_index_exact,
    structured_candidates,
    witness_certificate,
)
from .range import (
    daugavet_defect,
    direct_radius,
    identity_plus,
    numerical_radius,
    numerical_range_sample,
    sup_re_numerical_range,
    v_delta,
)

__all__ = [
    "index_upper_certificate",
    "numerical_index",
    "numerical_index_estimate",
    "numerical_index_exact",
    "structured_candidates",
    "witness_certificate",
    "daugavet_defect",
    "direct_radius",
    "identity_plus",
    "numerical_radius",
    "numerical_range_sample",
    "sup_re_numerical_range",
    "v_delta",
]
