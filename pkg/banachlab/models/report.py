"""
命令行运行配置与报告模型
"""

from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field, field_validator

from .pipeline import SolverOptions


class OutputFormat(str, Enum):
    """报告格式"""
    JSON = "json"
    CSV = "csv"
    HUMAN = "human"


class Command(str, Enum):
    """可分发的命令"""
    NORM = "norm"
    DUAL = "dual"
    OPNORM = "opnorm"
    VRADIUS = "vradius"
    VDELTA = "vdelta"
    NINDEX = "nindex"
    TENSOR_NORM = "tensor-norm"
    NUCLEAR = "nuclear"
    DAUGAVET = "daugavet"
    SLICE = "slice"
    VERIFY = "verify"


class RunConfig(BaseModel):
    """一次命令运行的完整配置；种子决定所有启发式路径的输出"""
    catalog_path: Path = Field(..., description="目录文件路径")
    command: Command = Field(..., description="命令")
    targets: list[str] = Field(default_factory=list, description="目标标签")
    options: SolverOptions = Field(default_factory=SolverOptions, description="容差、预算、种子")
    delta: str = Field(default="1/16", description="vdelta 命令使用的 δ")
    output_format: OutputFormat = Field(default=OutputFormat.JSON)
    output_path: Path | None = Field(default=None)

    @field_validator("targets")
    @classmethod
    def _strip(cls, value: list[str]) -> list[str]:
        return [v.strip() for v in value if v.strip()]


class ReportItem(BaseModel):
    """报告中的一条数值结果；每个数值都带 exact/heuristic 标记"""
    command: str
    targets: list[str] = Field(default_factory=list)
    quantity: str = Field(default="", description="数值含义，例如 ‖T‖、v(T)")
    value: float | None = Field(default=None)
    value_exact: str | None = Field(default=None, description="精确有理值 'p/q'")
    flag: str = Field(default="heuristic", description="exact 或 heuristic")
    margin: float | None = Field(default=None)
    verdict: str | None = Field(default=None)
    witness: Any = Field(default=None, description="见证（可 JSON 序列化）")
    provenance: str = Field(default="", description="产生该数值的计算路径")
    error: str | None = Field(default=None, description="该条目的错误信息")


class RunReport(BaseModel):
    """一次运行的报告"""
    command: str
    targets: list[str] = Field(default_factory=list)
    catalog: str = ""
    seed: str = ""
    options: dict[str, Any] = Field(default_factory=dict)
    items: list[ReportItem] = Field(default_factory=list)
    wall_time: float = Field(default=0.0, description="墙钟时间（秒）")
