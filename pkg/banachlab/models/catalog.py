"""
目录模型：空间、算子、向量、张量与切片族的具名集合
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..exceptions import CatalogError
from .operator import Operator
from .results import TensorElement
from .slices import SliceSpec
from .space import NormedSpace


class CatalogVector(BaseModel):
    """目录中的向量（或泛函系数），附带所在空间"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    label: str
    space: NormedSpace
    coordinates: np.ndarray


class SliceFamily(BaseModel):
    """点集 A 与其上的切片族"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    label: str
    points: list[np.ndarray] = Field(..., description="点集 A")
    ball: NormedSpace | None = Field(default=None, description="A 取自该空间单位球顶点时记录来源")
    slices: list[SliceSpec] = Field(default_factory=list)
    eta: float = Field(default=1e-6, description="凸包包含容差 η")


class Catalog(BaseModel):
    """按标签索引的目录"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    spaces: dict[str, NormedSpace] = Field(default_factory=dict)
    operators: dict[str, Operator] = Field(default_factory=dict)
    vectors: dict[str, CatalogVector] = Field(default_factory=dict)
    tensors: dict[str, TensorElement] = Field(default_factory=dict)
    families: dict[str, SliceFamily] = Field(default_factory=dict)
    suite: list[str] = Field(default_factory=list, description="verify 命令默认使用的空间标签")
    warnings: list[str] = Field(default_factory=list, description="加载时的警告")
    source: Path | None = Field(default=None, description="目录文件路径")

    def labels(self) -> list[str]:
        return [*self.spaces, *self.operators, *self.vectors, *self.tensors, *self.families]

    def resolve(self, label: str) -> Any:
        """
        按标签查找任意条目

        Raises:
            CatalogError: 标签不存在
        """
        for table in (self.spaces, self.operators, self.vectors, self.tensors, self.families):
            if label in table:
                return table[label]
        raise CatalogError(f"目录中没有标签 '{label}'")

    def space(self, label: str) -> NormedSpace:
        if label not in self.spaces:
            raise CatalogError(f"目录中没有空间 '{label}'")
        return self.spaces[label]

    def operator(self, label: str) -> Operator:
        if label not in self.operators:
            raise CatalogError(f"目录中没有算子 '{label}'")
        return self.operators[label]
