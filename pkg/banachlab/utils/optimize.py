"""
多起点优化工具

所有启发式路径都从这里取随机数和局部优化器，保证同一种子得到同一结果。
复向量在优化时拆成 (实部, 虚部) 两段实参数。
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_vectors(dim: int, count: int, complex_field: bool, rng: np.random.Generator) -> np.ndarray:
    """count × dim 的高斯随机向量（复数域加上 i·高斯）"""
    values = rng.standard_normal((count, dim))
    if complex_field:
        values = values + 1j * rng.standard_normal((count, dim))
    return values


def to_params(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z)
    if np.iscomplexobj(z):
        return np.concatenate([z.real.reshape(-1), z.imag.reshape(-1)])
    return np.asarray(z, dtype=np.float64).reshape(-1)


def from_params(params: np.ndarray, size: int, complex_field: bool) -> np.ndarray:
    if complex_field:
        return params[:size] + 1j * params[size:]
    return np.asarray(params, dtype=np.float64)


def maximize_local(
    objective: Callable[[np.ndarray], float],
    start: np.ndarray,
    iterations: int,
    xatol: float = 1e-12,
    fatol: float = 1e-14,
) -> tuple[np.ndarray, float]:
    """
    Nelder-Mead 局部最大化

    Args:
        objective: 实参数上的目标函数
        start: 起点（实参数）
        iterations: 迭代上限

    Returns:
        (最优参数, 最优值)；不会比起点更差
    """
    start = np.asarray(start, dtype=np.float64)
    start_value = objective(start)
    result = minimize(
        lambda p: -objective(p),
        start,
        method="Nelder-Mead",
        options={"maxiter": iterations, "xatol": xatol, "fatol": fatol, "adaptive": True},
    )
    value = -float(result.fun)
    if not np.isfinite(value) or value < start_value:
        return start, float(start_value)
    return np.asarray(result.x), value


def multistart_maximize(
    objective: Callable[[np.ndarray], float],
    starts: Sequence[np.ndarray],
    iterations: int,
    refine_top: int,
) -> tuple[np.ndarray, float]:
    """先评估全部起点，再对最好的 refine_top 个做局部优化"""
    if not starts:
        raise ValueError("多起点优化至少需要一个起点")
    scored = sorted(
        ((float(objective(np.asarray(s, dtype=np.float64))), i) for i, s in enumerate(starts)),
        key=lambda item: (-item[0], item[1]),
    )
    best_params = np.asarray(starts[scored[0][1]], dtype=np.float64)
    best_value = scored[0][0]
    for _, index in scored[:refine_top]:
        params, value = maximize_local(objective, starts[index], iterations)
        if value > best_value:
            best_params, best_value = params, value
    return best_params, best_value


def minimize_ratio(
    objective: Callable[[np.ndarray], float],
    starts: Sequence[np.ndarray],
    iterations: int,
    refine_top: int,
) -> tuple[np.ndarray, float]:
    """multistart_maximize 的最小化版本"""
    params, value = multistart_maximize(lambda p: -objective(p), starts, iterations, refine_top)
    return params, -value
