"""
工具函数模块
"""

from .optimize import (
    from_params,
    make_rng,
    maximize_local,
    minimize_ratio,
    multistart_maximize,
    random_vectors,
    to_params,
)

__all__ = [
    "from_params",
    "make_rng",
    "maximize_local",
    "minimize_ratio",
    "multistart_maximize",
    "random_vectors",
    "to_params",
]
