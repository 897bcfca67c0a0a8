"""
空间构造器与单位球面采样
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from ..models import NormedSpace, NormKind, PolyhedralData, ScalarField, SolverOptions
from ..utils import make_rng, random_vectors
from .norms import eval_norm
from .polytope import (
    canonical_vertices,
    exact_rank,
    facets_from_vertices,
    is_centrally_symmetric,
    vertices_from_facets,
)
from .scalars import parse_scalar


def lp_space(dim: int, p: Any, field: ScalarField | str = ScalarField.REAL, label: str | None = None) -> NormedSpace:
    """ℓ_p^dim，p 可以是数字或 "inf" """
    value = parse_scalar(p) if isinstance(p, str) else p
    exponent = math.inf if math.isinf(float(value)) else float(value)
    field = ScalarField(field)
    if label is None:
        tag = "inf" if math.isinf(exponent) else f"{exponent:g}"
        label = f"l{tag}_{dim}" + ("c" if field == ScalarField.COMPLEX else "")
    return NormedSpace(label=label, dim=dim, field=field, kind=NormKind.LP, p=exponent)


def euclidean_space(dim: int, field: ScalarField | str = ScalarField.REAL, label: str | None = None) -> NormedSpace:
    return lp_space(dim, 2, field, label)


def weighted_euclidean_space(
    weights: Sequence[float],
    field: ScalarField | str = ScalarField.REAL,
    label: str | None = None,
) -> NormedSpace:
    """‖x‖ = sqrt(Σ w_i |x_i|²)"""
    weights = tuple(float(w) for w in weights)
    return NormedSpace(
        label=label or f"w{len(weights)}",
        dim=len(weights),
        field=ScalarField(field),
        kind=NormKind.EUCLIDEAN_WEIGHTED,
        weights=weights,
    )


def _as_points(points: Sequence[Sequence[Any]] | None) -> tuple[tuple[Fraction, ...], ...] | None:
    if points is None:
        return None
    return tuple(tuple(Fraction(parse_scalar(c)) for c in point) for point in points)


def _check_points(label: str, name: str, points: tuple[tuple[Fraction, ...], ...], dim: int) -> None:
    if not points:
        raise ValueError(f"{label}: {name}为空")
    if any(len(point) != dim for point in points):
        raise ValueError(f"{label}: {name}的坐标个数不一致")
    if not is_centrally_symmetric(points):
        raise ValueError(f"{label}: {name}关于原点不对称")
    if exact_rank(points) != dim:
        raise ValueError(f"{label}: {name}不满维")


def _pairing(f: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(f, v)), Fraction(0))


def polyhedral_space(
    vertices: Sequence[Sequence[Any]] | None = None,
    facets: Sequence[Sequence[Any]] | None = None,
    label: str = "polyhedral",
) -> NormedSpace:
    """
    由顶点和/或面泛函构造实多面体空间

    检查中心对称、满维，并用双描述法由给出的一侧求出另一侧：
    每个顶点满足 max_f f(v) = 1 且是极点，每个面泛函满足 max_v f(v) = 1 且确实是面。
    两者都给出时还要求与对方推出的集合完全一致。

    Raises:
        ValueError: 数据不构成对称凸体的单位球
    """
    vertex_points = _as_points(vertices)
    facet_points = _as_points(facets)
    reference = vertex_points or facet_points
    if reference is None:
        raise ValueError(f"{label}: 需要顶点或面泛函")
    dim = len(reference[0])
    if vertex_points is not None:
        _check_points(label, "顶点", vertex_points, dim)
    if facet_points is not None:
        _check_points(label, "面泛函", facet_points, dim)

    if vertex_points is not None:
        canonical_facets = facets_from_vertices(vertex_points)
        canonical = canonical_vertices(vertex_points)
    else:
        canonical = vertices_from_facets(facet_points)
        canonical_facets = facets_from_vertices(canonical)

    for v in vertex_points or ():
        value = max(_pairing(f, v) for f in facet_points or canonical_facets)
        if value != 1:
            raise ValueError(f"{label}: 顶点 {_format(v)} 的范数为 {value}，不在单位球面上")
    for f in facet_points or ():
        value = max(_pairing(f, v) for v in vertex_points or canonical)
        if value != 1:
            raise ValueError(f"{label}: 面泛函 {_format(f)} 的对偶范数为 {value}，顶点与面不互为极对偶")

    if vertex_points is not None:
        extreme = set(canonical)
        for v in vertex_points:
            if v not in extreme:
                raise ValueError(f"{label}: 顶点 {_format(v)} 在单位球面上但不是极点")
    if facet_points is not None:
        exposed = set(canonical_facets)
        for f in facet_points:
            if f not in exposed:
                raise ValueError(f"{label}: 面泛函 {_format(f)} 不对应单位球的面")
        missing = exposed - set(facet_points)
        if missing:
            raise ValueError(f"{label}: 面泛函缺少 {_format(min(missing))}")

    data = PolyhedralData(vertices=vertex_points, facets=facet_points)
    return NormedSpace(label=label, dim=dim, kind=NormKind.POLYHEDRAL, polyhedral=data)


def _format(point: Sequence[Fraction]) -> str:
    return "(" + ", ".join(str(c) for c in point) + ")"


def sample_sphere(
    space: NormedSpace,
    count: int,
    seed: int | None = None,
    options: SolverOptions | None = None,
) -> list[np.ndarray]:
    """单位球面上的随机点（高斯方向归一化），同一种子结果相同"""
    options = options or SolverOptions()
    rng = make_rng(options.seed if seed is None else seed)
    points = []
    for v in random_vectors(space.dim, count, not space.is_real, rng):
        norm = float(eval_norm(space, v, options))
        if norm > 0:
            points.append(v / norm)
    return points
