"""
验证流水线相关数据模型
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .results import IndexCertificate
from .space import NormedSpace


class SolverOptions(BaseModel):
    """数值求解选项（容差、多起点预算、随机种子、维数保护）"""
    exact_tol: float = Field(default=1e-9, description="精确路径容差")
    opt_tol: float = Field(default=1e-6, description="优化路径容差")
    schedule_tol: float = Field(default=1e-7, description="δ 序列停止容差")
    facet_tol: float = Field(default=1e-9, description="判定点在面上的容差")
    seed: int = Field(default=0x5EED, description="随机种子")
    starts: int = Field(default=64, description="多起点个数")
    iterations: int = Field(default=500, description="单次局部优化迭代上限")
    index_starts: int = Field(default=256, description="数值指数估计的多起点个数")
    index_iterations: int = Field(default=1000, description="数值指数估计的迭代上限")
    refine_top: int = Field(default=16, description="进入局部优化的最优起点个数")
    max_schedule_levels: int = Field(default=40, description="δ 序列最大层数")
    operator_space_dim: int = Field(default=16, description="算子空间维数上限")
    tensor_dim: int = Field(default=16, description="张量空间维数上限")
    polytope_dim: int = Field(default=8, description="顶点/面互相转换的维数上限")
    exact_index_dim: int = Field(default=9, description="精确数值指数的 dim² 上限")
    estimate_dim: int = Field(default=64, description="多起点指数估计的 dim² 上限")
    lp_seed_limit: int = Field(default=512, description="线性规划种子个数上限")
    atom_limit: int = Field(default=4096, description="π 范数初始原子个数上限")

    @field_validator("exact_tol", "opt_tol", "schedule_tol", "facet_tol")
    @classmethod
    def _positive(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("容差必须为正数")
        return value

    def with_budget(self, budget: int | None) -> "SolverOptions":
        """用 --budget 覆盖多起点个数"""
        if budget is None:
            return self
        return self.model_copy(update={"index_starts": budget, "starts": min(self.starts, budget)})


class Verdict(str, Enum):
    """不等式检验结论"""
    HOLDS = "holds"                                      # 两侧精确且成立
    HOLDS_WITHIN_TOLERANCE = "holds-within-tolerance"    # 含启发式量，在容差内成立
    VIOLATED = "violated"                                # 两侧精确且不成立
    INCONCLUSIVE_HEURISTIC = "inconclusive-heuristic"    # 含启发式量且超出容差，或超出保护阈值


class InequalityReport(BaseModel):
    """一条不等式 lhs ≤ rhs（或 lhs = rhs）的检验报告"""
    name: str = Field(..., description="标识符")
    statement: str = Field(default="", description="不等式文字描述")
    relation: str = Field(default="<=", description="'<=' 或 '='")
    lhs: float | None = Field(default=None)
    lhs_exact: bool = Field(default=False)
    rhs: float | None = Field(default=None)
    rhs_exact: bool = Field(default=False)
    margin: float | None = Field(default=None, description="rhs − lhs（等式时为 −|rhs − lhs|）")
    witnesses: list[str] = Field(default_factory=list, description="证书来源")
    verdict: Verdict = Field(default=Verdict.INCONCLUSIVE_HEURISTIC)
    note: str = Field(default="")


class SuiteContext(BaseModel):
    """验证流水线执行上下文"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    catalog: list[NormedSpace] = Field(..., description="参与验证的空间")
    options: SolverOptions = Field(default_factory=SolverOptions)
    reports: list[InequalityReport] = Field(default_factory=list)
    index_cache: dict[tuple, IndexCertificate] = Field(
        default_factory=dict, description="按空间签名缓存的数值指数证书"
    )
    config: dict[str, Any] = Field(default_factory=dict, description="附加配置")


class SuiteStep(ABC):
    """验证流水线步骤抽象基类"""

    @property
    @abstractmethod
    def name(self) -> str:
        """步骤名称"""
        pass

    @property
    def description(self) -> str:
        """步骤描述（可选覆盖）"""
        return self.name

    @abstractmethod
    def execute(self, context: SuiteContext) -> SuiteContext:
        """
        执行步骤，把生成的报告追加到上下文

        Args:
            context: 执行上下文（空间目录、求解选项、缓存）

        Returns:
            更新后的 SuiteContext
        """
        pass

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}: {self.name}>"
