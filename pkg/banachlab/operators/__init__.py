"""
算子模块
"""

from .core import (
    adjoint,
    as_space_vector,
    compose,
    compute_op_norm,
    from_space_vector,
    identity,
    kron,
    make_operator,
    matmul,
    op_norm,
    operator_space,
    rank_one,
    rotation,
)

__all__ = [
    "adjoint",
    "as_space_vector",
    "compose",
    "compute_op_norm",
    "from_space_vector",
    "identity",
    "kron",
    "make_operator",
    "matmul",
    "op_norm",
    "operator_space",
    "rank_one",
    "rotation",
]
