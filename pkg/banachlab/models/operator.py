"""
算子与范数结果模型
"""

from __future__ import annotations

import threading
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from .space import NormedSpace


class NormResult(BaseModel):
    """范数计算结果，附带取到范数的单位向量"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    value: Any = Field(..., description="范数值（精确路径为 Fraction）")
    witness: np.ndarray | None = Field(default=None, description="取到范数的单位向量")
    exact: bool = Field(default=False, description="是否为确定性（非启发式）结果")
    method: str = Field(default="", description="计算路径")


class Operator(BaseModel):
    """
    X → Y 的线性算子，矩阵形状为 dim(Y) × dim(X)

    范数缓存只写一次，由内部锁保护。
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: np.ndarray = Field(..., description="系数矩阵")
    domain: NormedSpace = Field(..., description="定义域 X")
    codomain: NormedSpace = Field(..., description="值域 Y")
    label: str = Field(default="", description="标识符")

    _norm: NormResult | None = PrivateAttr(default=None)
    _lock: Any = PrivateAttr(default_factory=threading.Lock)

    @model_validator(mode="after")
    def _check_shape(self) -> "Operator":
        expected = (self.codomain.dim, self.domain.dim)
        if self.matrix.shape != expected:
            raise ValueError(f"算子矩阵形状 {self.matrix.shape} 与空间维数 {expected} 不符")
        return self

    @property
    def is_endomorphism(self) -> bool:
        return self.domain.same_as(self.codomain)

    @property
    def is_exact(self) -> bool:
        return self.matrix.dtype == object

    @property
    def cached_norm(self) -> NormResult | None:
        return self._norm

    def store_norm(self, result: NormResult) -> NormResult:
        """写入范数缓存（只写一次），返回生效的缓存值"""
        with self._lock:
            if self._norm is None:
                self._norm = result
            return self._norm

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.matrix.dot(x)
