"""
标量与数组工具：精确有理数 / 浮点 / 复数之间的转换
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Number
from typing import Any, Iterable, Sequence

import numpy as np

from ..exceptions import DimensionMismatchError
from ..models import NormedSpace


def parse_scalar(value: Any) -> Fraction | float | complex:
    """
    解析目录中的标量

    "1/3"、"0.25"、整数 → Fraction；"inf" → math.inf；含 j 的字符串 → complex
    """
    if isinstance(value, bool):
        raise ValueError(f"无法解析标量: {value!r}")
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, complex):
        return value
    if isinstance(value, float):
        return value
    text = str(value).strip().replace(" ", "")
    if text.lower() in ("inf", "+inf", "infinity", "∞"):
        return math.inf
    if "j" in text:
        return complex(text)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"无法解析标量: {value!r}") from e


def is_exact_scalar(value: Any) -> bool:
    return isinstance(value, (Fraction, int)) and not isinstance(value, bool)


def as_vector(values: Iterable[Any]) -> np.ndarray:
    """
    转为一维数组

    全部是整数/Fraction 时返回 object 数组（精确），含复数返回 complex128，否则 float64
    """
    if isinstance(values, np.ndarray) and values.dtype != object:
        return values.astype(np.complex128 if np.iscomplexobj(values) else np.float64)
    items = [parse_scalar(v) if isinstance(v, str) else v for v in values]
    if all(is_exact_scalar(v) for v in items):
        return np.array([Fraction(v) for v in items], dtype=object)
    if any(isinstance(v, complex) and v.imag != 0 for v in items):
        return np.array([complex(v) for v in items], dtype=np.complex128)
    return np.array([float(v) for v in items], dtype=np.float64)


def as_matrix(rows: Sequence[Sequence[Any]] | np.ndarray) -> np.ndarray:
    """转为二维数组，规则同 as_vector"""
    if isinstance(rows, np.ndarray) and rows.dtype != object:
        if rows.ndim != 2:
            raise DimensionMismatchError(f"需要二维矩阵，得到形状 {rows.shape}")
        return rows.astype(np.complex128 if np.iscomplexobj(rows) else np.float64)
    array = np.asarray(rows, dtype=object)
    if array.ndim != 2:
        raise DimensionMismatchError(f"需要二维矩阵，得到形状 {array.shape}")
    flat = as_vector(array.reshape(-1).tolist())
    return flat.reshape(array.shape)


def is_exact(array: np.ndarray) -> bool:
    return isinstance(array, np.ndarray) and array.dtype == object


def to_float(array: np.ndarray | Any) -> np.ndarray:
    """精确数组转为浮点（保留复数）"""
    array = np.asarray(array)
    if array.dtype == object:
        if any(isinstance(v, complex) for v in array.reshape(-1)):
            return array.astype(np.complex128)
        return array.astype(np.float64)
    return array


def to_exact(array: np.ndarray) -> np.ndarray:
    """实数浮点数组按二进制值精确转为 Fraction"""
    array = np.asarray(array)
    if array.dtype == object:
        return array
    if np.iscomplexobj(array):
        raise ValueError("复数数组无法转为精确有理数")
    out = np.empty(array.shape, dtype=object)
    for index, value in np.ndenumerate(array):
        out[index] = Fraction(float(value))
    return out


def exact_zeros(shape: int | tuple[int, ...]) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def exact_identity(n: int) -> np.ndarray:
    out = exact_zeros((n, n))
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def unit_vector(n: int, i: int, exact: bool = True) -> np.ndarray:
    if exact:
        out = exact_zeros(n)
        out[i] = Fraction(1)
        return out
    out = np.zeros(n)
    out[i] = 1.0
    return out


def coerce_vector(space: NormedSpace, x: Any) -> np.ndarray:
    """检查长度并转换为数组"""
    vector = as_vector(x) if not isinstance(x, np.ndarray) else x
    if vector.ndim != 1 or vector.shape[0] != space.dim:
        raise DimensionMismatchError(
            f"向量长度 {vector.shape} 与空间 {space.label} 的维数 {space.dim} 不符"
        )
    if not space.is_real and vector.dtype != object:
        vector = vector.astype(np.complex128)
    return vector


def scalar_abs(value: Any) -> Any:
    return abs(value)


def real_part(value: Any) -> Any:
    if isinstance(value, (Fraction, int)):
        return value
    return value.real if isinstance(value, (complex, np.complexfloating)) else value


def as_float(value: Any) -> float:
    if isinstance(value, Number) and not isinstance(value, complex):
        return float(value)
    return float(np.real(value))


def format_scalar(value: Any) -> str:
    """Fraction 输出为 'p/q'，其余为 repr"""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return f"{value}/1"
    return repr(value)


def dedupe_points(points: Iterable[Sequence[Any]], up_to_sign: bool = False) -> list[tuple]:
    """去重（可选：把 ±v 视为同一点），保持首次出现顺序"""
    seen: set[tuple] = set()
    result: list[tuple] = []
    for point in points:
        key = tuple(point)
        if key in seen:
            continue
        if up_to_sign and tuple(-c for c in key) in seen:
            continue
        seen.add(key)
        result.append(key)
    return result
