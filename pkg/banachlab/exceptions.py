"""
异常定义
"""

from __future__ import annotations


class BanachLabError(Exception):
    """所有 banachlab 异常的基类"""


class DimensionMismatchError(BanachLabError, ValueError):
    """向量长度、矩阵形状或空间不匹配"""


class GuardrailExceededError(BanachLabError):
    """维度超过配置的保护阈值"""


class UnsupportedNormError(BanachLabError):
    """当前范数类型不支持该操作（例如光滑范数没有有限顶点集）"""


class NotOnSphereError(BanachLabError, ValueError):
    """向量不在单位球面上"""


class NotEndomorphismError(BanachLabError, ValueError):
    """算子的定义域与值域不是同一个空间"""


class CatalogError(BanachLabError, ValueError):
    """目录文件格式错误或标签无法解析"""
