"""
多面体后端：顶点 ↔ 面泛函的极对偶转换（双描述法，精确有理数）与精确秩计算

单位球总是关于原点中心对称且以原点为内点，因此
面泛函 f 对应不等式 f(x) ≤ 1，顶点 v 对应生成元 [1, v]。
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import cdd
import cdd.gmp
import sympy

from ..exceptions import GuardrailExceededError, UnsupportedNormError

Point = tuple[Fraction, ...]


def _check_guard(dim: int, guard: int | None, what: str) -> None:
    if guard is not None and dim > guard:
        raise GuardrailExceededError(f"{what}: 维数 {dim} 超过保护阈值 {guard}")


def vertices_from_facets(
    facets: Sequence[Sequence[Fraction]],
    guard: int | None = 8,
) -> list[Point]:
    """
    由 {x : f(x) ≤ 1, f ∈ facets} 枚举顶点

    Args:
        facets: 面泛函列表（可含冗余）
        guard: 维数保护阈值

    Returns:
        顶点列表（精确有理数，已排序）
    """
    if not facets:
        raise UnsupportedNormError("面泛函列表为空")
    dim = len(facets[0])
    _check_guard(dim, guard, "顶点枚举")

    rows = [[Fraction(1)] + [-Fraction(c) for c in f] for f in facets]
    matrix = cdd.gmp.matrix_from_array(rows, rep_type=cdd.RepType.INEQUALITY)
    polyhedron = cdd.gmp.polyhedron_from_matrix(matrix)
    generators = cdd.gmp.copy_generators(polyhedron)

    if generators.lin_set:
        raise UnsupportedNormError("不等式组含直线方向，单位球无界")
    vertices: list[Point] = []
    for row in generators.array:
        head = Fraction(row[0])
        if head == 0:
            raise UnsupportedNormError("不等式组含射线方向，单位球无界")
        vertices.append(tuple(Fraction(c) / head for c in row[1:]))
    return sorted(set(vertices))


def facets_from_vertices(
    vertices: Sequence[Sequence[Fraction]],
    guard: int | None = 8,
) -> list[Point]:
    """
    由 conv(vertices) 计算面泛函（极对偶）

    Args:
        vertices: 顶点（可含冗余点）
        guard: 维数保护阈值

    Returns:
        不冗余的面泛函列表
    """
    if not vertices:
        raise UnsupportedNormError("顶点列表为空")
    dim = len(vertices[0])
    _check_guard(dim, guard, "面枚举")

    rows = [[Fraction(1)] + [Fraction(c) for c in v] for v in vertices]
    matrix = cdd.gmp.matrix_from_array(rows, rep_type=cdd.RepType.GENERATOR)
    polyhedron = cdd.gmp.polyhedron_from_matrix(matrix)
    inequalities = cdd.gmp.copy_inequalities(polyhedron)

    if inequalities.lin_set:
        raise UnsupportedNormError("顶点集不满维，不是范数单位球")
    facets: list[Point] = []
    for row in inequalities.array:
        b = Fraction(row[0])
        a = [Fraction(c) for c in row[1:]]
        if all(c == 0 for c in a):
            continue
        if b <= 0:
            raise UnsupportedNormError("原点不在凸包内部，不是范数单位球")
        facets.append(tuple(-c / b for c in a))
    return sorted(set(facets))


def canonical_vertices(points: Sequence[Sequence[Fraction]], guard: int | None = 8) -> list[Point]:
    """去掉非极点：两次极对偶"""
    return vertices_from_facets(facets_from_vertices(points, guard), guard)


def exact_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    return sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in r] for r in rows]).rank()


def exact_nullspace(rows: Sequence[Sequence[Fraction]], dim: int) -> list[Point]:
    """零空间的一组有理基"""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]
    matrix = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in r] for r in rows])
    basis = []
    for vector in matrix.nullspace():
        basis.append(tuple(Fraction(int(v.p), int(v.q)) for v in vector))
    return basis


def is_centrally_symmetric(points: Sequence[Sequence[Fraction]]) -> bool:
    pool = {tuple(p) for p in points}
    return all(tuple(-c for c in p) in pool for p in pool)
