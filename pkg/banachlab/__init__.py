"""
BanachLab: 有限维 Banach 空间几何计算实验室
从「空间 + 算子目录」到带精确/启发式标记的数值报告与不等式验证
"""

__version__ = "0.1.0"

from .models import (
    Catalog,
    IndexCertificate,
    InequalityReport,
    NormedSpace,
    Operator,
    SolverOptions,
    TensorElement,
    Verdict,
)
from .config import load_config, parse_catalog, save_catalog, AppConfig
from .geometry import dual_norm, dual_space, eval_norm, lp_space, polyhedral_space
from .operators import op_norm, operator_space
from .numerical import numerical_index, numerical_index_estimate, numerical_index_exact, numerical_radius, v_delta
from .tensor import eps_norm, pi_norm, tensor_space
from .ideals import SuiteExecutor, embed_postcompose, embed_precompose, verify_suite
from .commands import run_command

__all__ = [
    # 版本
    "__version__",
    # 模型
    "Catalog",
    "IndexCertificate",
    "InequalityReport",
    "NormedSpace",
    "Operator",
    "SolverOptions",
    "TensorElement",
    "Verdict",
    # 配置
    "load_config",
    "parse_catalog",
    "save_catalog",
    "AppConfig",
    # 几何
    "dual_norm",
    "dual_space",
    "eval_norm",
    "lp_space",
    "polyhedral_space",
    # 算子与数值指数
    "op_norm",
    "operator_space",
    "numerical_index",
    "numerical_index_estimate",
    "numerical_index_exact",
    "numerical_radius",
    "v_delta",
    # 张量
    "eps_norm",
    "pi_norm",
    "tensor_space",
    # 算子理想
    "SuiteExecutor",
    "embed_postcompose",
    "embed_precompose",
    "verify_suite",
    # 命令
    "run_command",
]
