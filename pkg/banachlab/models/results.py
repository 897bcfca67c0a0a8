"""
计算结果模型：状态对、数值半径、数值指数证书、张量元素
"""

from __future__ import annotations

from enum import Enum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .operator import Operator
from .space import NormedSpace


class StatePair(BaseModel):
    """状态对 (x, x*)，gap = 1 − re x*(x)"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    x: np.ndarray = Field(..., description="单位球中的向量")
    x_star: np.ndarray = Field(..., description="对偶单位球中的泛函系数")
    gap: Any = Field(default=0, description="1 − re x*(x)")


class RadiusResult(BaseModel):
    """数值半径结果"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    value: Any = Field(..., description="v(T)")
    witness: StatePair | None = Field(default=None, description="取到 v(T) 的状态对")
    exact: bool = Field(default=False, description="是否为精确值")
    delta_schedule: list[tuple[Any, Any]] = Field(
        default_factory=list, description="(δ, v_δ) 序列，δ 递减"
    )
    method: str = Field(default="", description="计算路径")


class DaugavetResult(BaseModel):
    """Daugavet 方程检验结果"""
    defect: Any = Field(..., description="1 + ‖T‖ − ‖Id+T‖")
    sup_re_v: Any = Field(..., description="sup re V(T)")
    norm: Any = Field(..., description="‖T‖")
    norm_id_plus: Any = Field(..., description="‖Id+T‖")
    exact: bool = Field(default=False)


class IndexMethod(str, Enum):
    """数值指数计算方法"""
    POLYHEDRAL_ENUMERATION = "polyhedral-enumeration"  # 多面体顶点枚举（精确）
    MULTISTART = "multistart"                          # 多起点优化
    WITNESS_ONLY = "witness-only"                      # 只评估给定候选算子


class IndexCertificate(BaseModel):
    """数值指数证书：value ≤ v(witness)/‖witness‖"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    value: Any = Field(..., description="n(X) 的值或上界")
    witness_operator: Operator | None = Field(default=None, description="‖T‖=1 的见证算子")
    witness_value: Any = Field(default=None, description="v(见证算子)")
    witness_states: list[StatePair] = Field(default_factory=list, description="见证状态对")
    exact: bool = Field(default=False, description="value 是否为 n(X) 的精确值")
    certified: bool = Field(default=False, description="witness_value 是否由精确路径算出")
    method: IndexMethod = Field(default=IndexMethod.MULTISTART)
    provenance: str = Field(default="", description="计算来源说明")


class TensorElement(BaseModel):
    """X⊗Y 中的元素，系数矩阵 dim(X)×dim(Y)，按左指标优先展平"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coefficients: np.ndarray = Field(..., description="系数矩阵")
    left: NormedSpace = Field(..., description="左因子 X")
    right: NormedSpace = Field(..., description="右因子 Y")

    @model_validator(mode="after")
    def _check_shape(self) -> "TensorElement":
        expected = (self.left.dim, self.right.dim)
        if self.coefficients.shape != expected:
            raise ValueError(f"张量系数形状 {self.coefficients.shape} 与因子维数 {expected} 不符")
        return self

    def flat(self) -> np.ndarray:
        return self.coefficients.reshape(-1)


class TensorNormResult(BaseModel):
    """ε 范数结果，见证为对偶单位球中的一对泛函"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    value: Any = Field(..., description="‖u‖_ε")
    left_functional: np.ndarray | None = Field(default=None, description="x*")
    right_functional: np.ndarray | None = Field(default=None, description="y*")
    exact: bool = Field(default=False)
    method: str = Field(default="")


class RankOneTerm(BaseModel):
    """分解中的一项 c·x⊗y"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    coefficient: float
    left: np.ndarray
    right: np.ndarray


class PiNormResult(BaseModel):
    """π 范数结果：原问题上界（分解）与对偶下界（‖B‖_{L(X,Y*)} ≤ 1 的泛函）"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    value: Any = Field(..., description="报告值（精确时即 ‖u‖_π）")
    upper: Any = Field(..., description="分解给出的上界")
    lower: Any = Field(..., description="对偶证书给出的下界")
    decomposition: list[RankOneTerm] = Field(default_factory=list)
    dual_certificate: np.ndarray | None = Field(default=None, description="对偶泛函系数")
    exact: bool = Field(default=False)
    method: str = Field(default="")

    @property
    def gap(self) -> float:
        return float(self.upper) - float(self.lower)
