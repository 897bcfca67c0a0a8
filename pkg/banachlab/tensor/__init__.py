"""
张量范数模块
"""

from .norms import (
    elementary_tensor,
    eps_norm,
    nuclear_norm_operator,
    pi_norm,
    tensor_lift,
    tensor_space,
)

__all__ = [
    "elementary_tensor",
    "eps_norm",
    "nuclear_norm_operator",
    "pi_norm",
    "tensor_lift",
    "tensor_space",
]
