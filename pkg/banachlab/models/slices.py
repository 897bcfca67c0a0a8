"""
切片与确定族相关模型
"""

from __future__ import annotations

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .space import NormedSpace


class SliceSpec(BaseModel):
    """Slice(A, x*, δ) = {x ∈ A : re x*(x) > sup re x*(A) − δ}"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    points: list[np.ndarray] | None = Field(default=None, description="有限点集 A")
    ball: NormedSpace | None = Field(default=None, description="以单位球顶点作为 A")
    functional: np.ndarray = Field(..., description="x*")
    depth: Any = Field(..., description="δ > 0")


class Separation(BaseModel):
    """凸包包含检验结果"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    contained: bool = Field(..., description="A 是否在 conv(B) 的 η 邻域内")
    point: np.ndarray | None = Field(default=None, description="被分离的点 a")
    functional: np.ndarray | None = Field(default=None, description="分离泛函 f，‖f‖_1 ≤ 1")
    margin: float = Field(default=0.0, description="f(a) − max f(B)，即到 conv(B) 的 ℓ_∞ 距离")

    def __bool__(self) -> bool:
        return self.contained


class DeterminingVerdict(BaseModel):
    """确定族反例搜索结果"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    family: list[SliceSpec] = Field(..., description="切片族")
    counterexample: list[np.ndarray] | None = Field(default=None, description="反例点集 B")
    separation: Separation | None = Field(default=None, description="被分离的点及泛函")
    resolution: dict[str, Any] = Field(default_factory=dict, description="η、预算、种子、搜索方式")

    @property
    def found(self) -> bool:
        return self.counterexample is not None


class StronglyExposedReport(BaseModel):
    """强暴露点检验：re y*(y0) > 1−δ ⇒ ‖y0* − y*‖ < ε"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    exposing_functional: np.ndarray = Field(..., description="y0*")
    holds: bool = Field(...)
    worst_distance: float = Field(..., description="满足前提的样本中 ‖y0* − y*‖ 的最大值")
    admissible_samples: int = Field(default=0)
    counterexample: np.ndarray | None = Field(default=None)


class SliceDaugavetReport(BaseModel):
    """切片版 Daugavet 检验：sup{‖x+y‖ : y ∈ Slice(B_X, x*, ε)} 与 2 − ε 比较"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    best_value: float = Field(..., description="切片上 ‖x+y‖ 的最大值")
    threshold: float = Field(..., description="2 − ε")
    holds: bool = Field(...)
    best_point: np.ndarray | None = Field(default=None)
    exact: bool = Field(default=False)
