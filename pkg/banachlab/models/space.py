"""
数据模型定义：NormedSpace, Functional 等核心结构
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class ScalarField(str, Enum):
    """标量域"""
    REAL = "real"        # 实数域
    COMPLEX = "complex"  # 复数域


class NormKind(str, Enum):
    """范数类型"""
    LP = "lp"                                  # ℓ_p，p ∈ [1, ∞]
    POLYHEDRAL = "polyhedral"                  # 单位球为多面体
    EUCLIDEAN_WEIGHTED = "euclidean-weighted"  # 加权欧氏范数
    TENSOR_PI = "tensor-pi"                    # 射影张量积
    TENSOR_EPS = "tensor-eps"                  # 内射张量积
    OPERATOR_SPACE = "operator-space"          # 算子空间 L(X,Y)
    DUAL_OF = "dual-of"                        # 某空间的对偶


class PolyhedralData(BaseModel):
    """多面体单位球数据（精确有理数坐标）"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    vertices: tuple[tuple[Fraction, ...], ...] | None = Field(default=None, description="单位球顶点")
    facets: tuple[tuple[Fraction, ...], ...] | None = Field(
        default=None, description="面泛函 f，单位球为 {x : f(x) ≤ 1}"
    )

    @model_validator(mode="after")
    def _check_nonempty(self) -> "PolyhedralData":
        if self.vertices is None and self.facets is None:
            raise ValueError("多面体数据至少需要顶点或面泛函之一")
        return self


class NormedSpace(BaseModel):
    """
    有限维赋范空间

    不可变对象。相同字段（忽略 label）的两个空间视为同一个空间，
    多面体数据等派生结果按 signature 缓存。
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    label: str = Field(..., description="标识符")
    dim: int = Field(..., ge=1, description="维数")
    field: ScalarField = Field(default=ScalarField.REAL, description="标量域")
    kind: NormKind = Field(..., description="范数类型")
    p: float | None = Field(default=None, description="ℓ_p 指数，math.inf 表示 ∞")
    weights: tuple[float, ...] | None = Field(default=None, description="加权欧氏范数的权重")
    polyhedral: PolyhedralData | None = Field(default=None, description="显式多面体数据")
    left: NormedSpace | None = Field(default=None, description="张量积左因子 / 算子空间定义域")
    right: NormedSpace | None = Field(default=None, description="张量积右因子 / 算子空间值域")
    predual: NormedSpace | None = Field(default=None, description="dual-of 的原空间")

    @field_validator("p")
    @classmethod
    def _check_p(cls, value: float | None) -> float | None:
        if value is not None and not (value >= 1):
            raise ValueError(f"ℓ_p 指数必须满足 p ≥ 1，当前为 {value}")
        return value

    @model_validator(mode="after")
    def _check_kind(self) -> "NormedSpace":
        if self.kind == NormKind.LP and self.p is None:
            raise ValueError(f"{self.label}: lp 范数缺少 p")
        if self.kind == NormKind.POLYHEDRAL:
            if self.polyhedral is None:
                raise ValueError(f"{self.label}: polyhedral 范数缺少顶点/面数据")
            if self.field == ScalarField.COMPLEX:
                raise ValueError(f"{self.label}: 复数域不支持多面体数据")
        if self.kind == NormKind.EUCLIDEAN_WEIGHTED:
            if self.weights is None or len(self.weights) != self.dim:
                raise ValueError(f"{self.label}: 权重个数必须等于维数 {self.dim}")
            if any(w <= 0 for w in self.weights):
                raise ValueError(f"{self.label}: 权重必须为正")
        if self.kind in (NormKind.TENSOR_PI, NormKind.TENSOR_EPS, NormKind.OPERATOR_SPACE):
            if self.left is None or self.right is None:
                raise ValueError(f"{self.label}: 缺少因子空间")
            if self.left.dim * self.right.dim != self.dim:
                raise ValueError(f"{self.label}: 维数应为 {self.left.dim}×{self.right.dim}")
        if self.kind == NormKind.DUAL_OF:
            if self.predual is None or self.predual.dim != self.dim:
                raise ValueError(f"{self.label}: dual-of 需要同维数的原空间")
        return self

    @property
    def is_real(self) -> bool:
        return self.field == ScalarField.REAL

    @property
    def dtype(self) -> Any:
        return np.float64 if self.is_real else np.complex128

    @property
    def is_euclidean(self) -> bool:
        """未加权的 ℓ_2"""
        return self.kind == NormKind.LP and self.p == 2

    @property
    def signature(self) -> tuple:
        """忽略 label 的结构签名"""
        return (
            self.dim,
            self.field.value,
            self.kind.value,
            self.p,
            self.weights,
            self.polyhedral.vertices if self.polyhedral else None,
            self.polyhedral.facets if self.polyhedral else None,
            self.left.signature if self.left else None,
            self.right.signature if self.right else None,
            self.predual.signature if self.predual else None,
        )

    def same_as(self, other: NormedSpace) -> bool:
        return self.signature == other.signature

    def describe(self) -> str:
        """简短描述，用于报告"""
        if self.kind == NormKind.LP:
            p = "∞" if math.isinf(self.p or 0) else f"{self.p:g}"
            return f"ℓ_{p}^{self.dim} ({self.field.value})"
        if self.kind in (NormKind.TENSOR_PI, NormKind.TENSOR_EPS):
            symbol = "π" if self.kind == NormKind.TENSOR_PI else "ε"
            return f"{self.left.label} ⊗_{symbol} {self.right.label}"
        if self.kind == NormKind.OPERATOR_SPACE:
            return f"L({self.left.label}, {self.right.label})"
        if self.kind == NormKind.DUAL_OF:
            return f"({self.predual.label})*"
        return f"{self.kind.value} dim={self.dim}"


class Functional(BaseModel):
    """对偶空间中的元素，作用方式为 Σ f_i x_i（不取共轭）"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coefficients: np.ndarray = Field(..., description="系数")
    space: NormedSpace = Field(..., description="原空间")

    @model_validator(mode="after")
    def _check_length(self) -> "Functional":
        if self.coefficients.shape != (self.space.dim,):
            raise ValueError(
                f"泛函长度 {self.coefficients.shape} 与空间 {self.space.label} 维数 {self.space.dim} 不符"
            )
        return self

    def __call__(self, x: np.ndarray) -> Any:
        return sum(c * v for c, v in zip(self.coefficients, x))


NormedSpace.model_rebuild()
