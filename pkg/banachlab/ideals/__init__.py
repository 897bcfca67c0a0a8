"""
算子理想与张量积上的数值指数不等式
"""

from __future__ import annotations

from typing import Any

from ..models import InequalityReport, NormedSpace, SolverOptions
from .embeddings import embed_postcompose, embed_precompose
from .executor import SuiteExecutor
from .steps import (
    ContrapositiveStep,
    DualTensorStep,
    FactorIndexStep,
    IdealCorollaryStep,
    OperatorIdealStep,
    TensorIdealStep,
    TransportStep,
    default_steps,
    judge,
)


def verify_suite(
    catalog: list[NormedSpace],
    options: SolverOptions | None = None,
    config: dict[str, Any] | None = None,
) -> list[InequalityReport]:
    """对目录中的空间运行默认验证流水线"""
    return SuiteExecutor(default_steps()).run(catalog, options, config)


__all__ = [
    "embed_postcompose",
    "embed_precompose",
    "SuiteExecutor",
    "ContrapositiveStep",
    "DualTensorStep",
    "FactorIndexStep",
    "IdealCorollaryStep",
    "OperatorIdealStep",
    "TensorIdealStep",
    "TransportStep",
    "default_steps",
    "judge",
    "verify_suite",
]
