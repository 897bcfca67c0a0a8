"""
算子空间上的前复合 / 后复合嵌入

L(X,Y) 的坐标为 dim(Y)×dim(X) 矩阵按行展平，于是
vec(T∘J) = (I_Y ⊗ Jᵀ) vec(T)，vec(S∘T) = (S ⊗ I_X) vec(T)。
"""

from __future__ import annotations

import numpy as np

from ..geometry.scalars import exact_identity
from ..models import NormedSpace, Operator, SolverOptions
from ..operators.core import kron, operator_space


def _identity_matrix(space: NormedSpace) -> np.ndarray:
    return exact_identity(space.dim) if space.is_real else np.eye(space.dim, dtype=np.complex128)


def embed_precompose(J: Operator, Y: NormedSpace, options: SolverOptions | None = None) -> Operator:
    """
    Φ_J: L(X₂,Y) → L(X₁,Y)，T ↦ T∘J，其中 J: X₁ → X₂

    ‖Φ_J‖ = ‖J‖；Φ_{J₁∘J₂} = Φ_{J₂}∘Φ_{J₁}
    """
    source = operator_space(J.codomain, Y, options)
    target = operator_space(J.domain, Y, options)
    matrix = kron(_identity_matrix(Y), np.array(J.matrix.T))
    return Operator(matrix=matrix, domain=source, codomain=target, label=f"Φ[{J.label}]" if J.label else "")


def embed_postcompose(S: Operator, X: NormedSpace, options: SolverOptions | None = None) -> Operator:
    """
    Ψ_S: L(X,Y₁) → L(X,Y₂)，T ↦ S∘T，其中 S: Y₁ → Y₂

    ‖Ψ_S‖ = ‖S‖；Ψ_{S₁∘S₂} = Ψ_{S₁}∘Ψ_{S₂}
    """
    source = operator_space(X, S.domain, options)
    target = operator_space(X, S.codomain, options)
    matrix = kron(S.matrix, _identity_matrix(X))
    return Operator(matrix=matrix, domain=source, codomain=target, label=f"Ψ[{S.label}]" if S.label else "")
