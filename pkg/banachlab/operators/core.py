"""
算子：算子范数、复合、伴随、算子空间与常用构造

矩阵形状为 dim(Y)×dim(X)；算子空间 L(X,Y) 的坐标为矩阵按行展平。
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from ..exceptions import DimensionMismatchError, GuardrailExceededError
from ..geometry.norms import (
    dual_norm,
    dual_space,
    euclidean_pair,
    eval_norm,
    float_points,
    norm_is_certified,
    support_point,
    try_facets,
    try_vertices,
)
from ..geometry.scalars import as_matrix, exact_identity, is_exact, to_float
from ..models import NormedSpace, NormKind, NormResult, Operator, SolverOptions
from ..utils import from_params, make_rng, multistart_maximize, random_vectors, to_params


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """精确 × 精确保持 Fraction，否则转浮点"""
    if is_exact(a) and is_exact(b):
        return a.dot(b)
    return to_float(a) @ to_float(b)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker 积（支持 object 数组）"""
    if not (is_exact(a) and is_exact(b)):
        return np.kron(to_float(a), to_float(b))
    if a.ndim == 1:
        return np.array([x * y for x in a for y in b], dtype=object)
    rows_a, cols_a = a.shape
    rows_b, cols_b = b.shape
    out = np.empty((rows_a * rows_b, cols_a * cols_b), dtype=object)
    for i in range(rows_a):
        for j in range(cols_a):
            out[i * rows_b:(i + 1) * rows_b, j * cols_b:(j + 1) * cols_b] = a[i, j] * b
    return out


# ---------------------------------------------------------------------------
# 构造
# ---------------------------------------------------------------------------


def make_operator(
    rows: Sequence[Sequence[Any]] | np.ndarray,
    domain: NormedSpace,
    codomain: NormedSpace | None = None,
    label: str = "",
) -> Operator:
    codomain = codomain or domain
    matrix = as_matrix(rows)
    if not (domain.is_real and codomain.is_real) and not is_exact(matrix):
        matrix = matrix.astype(np.complex128)
    return Operator(matrix=matrix, domain=domain, codomain=codomain, label=label)


def identity(space: NormedSpace, label: str | None = None) -> Operator:
    matrix = exact_identity(space.dim) if space.is_real else np.eye(space.dim, dtype=np.complex128)
    return Operator(matrix=matrix, domain=space, codomain=space, label=label or f"Id_{space.label}")


def rank_one(x_star: Any, y: Any, domain: NormedSpace, codomain: NormedSpace, label: str = "") -> Operator:
    """x*⊗y：x ↦ x*(x)·y"""
    x_star = np.asarray(x_star)
    y = np.asarray(y)
    if is_exact(x_star) and is_exact(y):
        matrix = np.array([[b * a for a in x_star] for b in y], dtype=object)
    else:
        matrix = np.outer(to_float(y), to_float(x_star))
    return Operator(matrix=matrix, domain=domain, codomain=codomain, label=label)


def rotation(space: NormedSpace, angle: float = math.pi / 2, i: int = 0, j: int = 1) -> Operator:
    """坐标平面 (i, j) 内的旋转，其余坐标置零；π/2 时为精确矩阵"""
    if space.dim < 2:
        raise DimensionMismatchError(f"{space.label}: 旋转需要维数 ≥ 2")
    if math.isclose(angle, math.pi / 2) and space.is_real:
        matrix = np.empty((space.dim, space.dim), dtype=object)
        matrix.fill(Fraction(0))
        matrix[i, j] = Fraction(-1)
        matrix[j, i] = Fraction(1)
    else:
        matrix = np.zeros((space.dim, space.dim), dtype=space.dtype)
        c, s = math.cos(angle), math.sin(angle)
        matrix[i, i], matrix[i, j], matrix[j, i], matrix[j, j] = c, -s, s, c
    return Operator(matrix=matrix, domain=space, codomain=space, label=f"rot_{space.label}")


# ---------------------------------------------------------------------------
# 算子范数
# ---------------------------------------------------------------------------


def _zero_result(T: Operator) -> NormResult:
    witness = np.zeros(T.domain.dim, dtype=T.domain.dtype)
    witness[0] = 1
    witness = witness / float(eval_norm(T.domain, witness))
    value = Fraction(0) if T.is_exact else 0.0
    return NormResult(value=value, witness=witness, exact=True, method="zero")


def _norm_over_vertices(T: Operator, vertices: list, options: SolverOptions) -> NormResult:
    """‖T‖ = max_v ‖Tv‖_Y，v 取定义域单位球顶点"""
    codomain = T.codomain
    certified = norm_is_certified(codomain, options)
    if T.is_exact:
        best_index, best_value = 0, None
        for k, v in enumerate(vertices):
            value = eval_norm(codomain, T.matrix.dot(np.array(v, dtype=object)), options)
            if best_value is None or value > best_value:
                best_index, best_value = k, value
        witness = np.array(vertices[best_index], dtype=object)
        return NormResult(value=best_value, witness=witness, exact=certified, method="domain-vertices")

    points = float_points(T.domain, "vertices", options)
    images = points @ to_float(T.matrix).T
    facets = try_facets(codomain, options)
    if facets is not None:
        norms = np.max(np.abs(images @ float_points(codomain, "facets", options).T), axis=1)
    elif codomain.is_euclidean:
        norms = np.linalg.norm(images, axis=1)
    else:
        norms = np.array([float(eval_norm(codomain, image, options)) for image in images])
    index = int(np.argmax(norms))
    return NormResult(
        value=float(norms[index]), witness=points[index], exact=certified, method="domain-vertices"
    )


def _norm_over_codomain_facets(T: Operator, facets: list, options: SolverOptions) -> NormResult:
    """‖T‖ = max_g ‖Tᵀg‖_{X*}，g 取值域的面泛函"""
    domain = T.domain
    certified = norm_is_certified(dual_space(domain), options)
    transpose = T.matrix.T
    best_value, best_functional = None, None
    for g in facets:
        if T.is_exact:
            pulled = transpose.dot(np.array(g, dtype=object))
        else:
            pulled = to_float(transpose) @ np.array(g, dtype=float)
        value = dual_norm(domain, pulled, options)
        if best_value is None or value > best_value:
            best_value, best_functional = value, pulled
    witness, _ = support_point(domain, best_functional, options)
    return NormResult(value=best_value, witness=witness, exact=certified, method="codomain-facets")


def _norm_singular(T: Operator) -> NormResult:
    matrix = to_float(T.matrix)
    _, singular, vh = np.linalg.svd(matrix)
    witness = np.conj(vh[0])
    if T.domain.is_real:
        witness = np.real(witness)
    return NormResult(value=float(singular[0]), witness=witness, exact=True, method="singular-values")


def _norm_tensor_domain(T: Operator, options: SolverOptions) -> NormResult:
    """定义域为 X⊗_πY：B = conv(B_X⊗B_Y)，在初等张量上最大化"""
    left, right = T.domain.left, T.domain.right
    matrix = to_float(T.matrix)
    complex_field = not T.domain.is_real
    size = left.dim + right.dim

    def split(params: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        z = from_params(params, size, complex_field)
        return z[: left.dim], z[left.dim:]

    def objective(params: np.ndarray) -> float:
        x, y = split(params)
        scale = float(eval_norm(left, x, options)) * float(eval_norm(right, y, options))
        if scale <= 1e-300:
            return 0.0
        return float(eval_norm(T.codomain, matrix @ np.kron(x, y), options)) / scale

    rng = make_rng(options.seed)
    starts = [to_params(v) for v in random_vectors(size, options.starts, complex_field, rng)]
    params, value = multistart_maximize(objective, starts, options.iterations, options.refine_top)
    x, y = split(params)
    x = x / float(eval_norm(left, x, options))
    y = y / float(eval_norm(right, y, options))
    return NormResult(value=value, witness=np.kron(x, y), exact=False, method="elementary-tensors")


def _norm_multistart(T: Operator, options: SolverOptions) -> NormResult:
    matrix = to_float(T.matrix)
    complex_field = not T.domain.is_real

    def objective(params: np.ndarray) -> float:
        x = from_params(params, T.domain.dim, complex_field)
        scale = float(eval_norm(T.domain, x, options))
        if scale <= 1e-300:
            return 0.0
        return float(eval_norm(T.codomain, matrix @ x, options)) / scale

    rng = make_rng(options.seed)
    starts = [to_params(v) for v in random_vectors(T.domain.dim, options.starts, complex_field, rng)]
    params, value = multistart_maximize(objective, starts, options.iterations, options.refine_top)
    x = from_params(params, T.domain.dim, complex_field)
    return NormResult(
        value=value, witness=x / float(eval_norm(T.domain, x, options)), exact=False, method="multistart"
    )


def compute_op_norm(T: Operator, options: SolverOptions) -> NormResult:
    """不读写缓存的算子范数计算"""
    if not np.any(to_float(T.matrix) != 0):
        return _zero_result(T)
    if euclidean_pair(T.domain, T.codomain):
        return _norm_singular(T)
    vertices = try_vertices(T.domain, options)
    if vertices is not None:
        return _norm_over_vertices(T, vertices, options)
    facets = try_facets(T.codomain, options)
    if facets is not None:
        return _norm_over_codomain_facets(T, facets, options)
    if T.domain.kind == NormKind.TENSOR_PI:
        return _norm_tensor_domain(T, options)
    return _norm_multistart(T, options)


def op_norm(T: Operator, options: SolverOptions | None = None) -> NormResult:
    """
    算子范数 ‖T‖ = sup{‖Tx‖_Y : ‖x‖_X ≤ 1}

    路径依次为：零算子；欧氏对（最大奇异值）；定义域顶点（精确）；
    值域面泛函；π 张量定义域上的初等张量；多起点比值最大化（启发式）。
    结果写入算子的一次性缓存。
    """
    cached = T.cached_norm
    if cached is not None and (options is None or cached.exact):
        return cached
    result = compute_op_norm(T, options or SolverOptions())
    return T.store_norm(result)


# ---------------------------------------------------------------------------
# 代数运算与算子空间
# ---------------------------------------------------------------------------


def compose(A: Operator, B: Operator) -> Operator:
    """
    A∘B

    Raises:
        DimensionMismatchError: B 的值域不是 A 的定义域
    """
    if not A.domain.same_as(B.codomain):
        raise DimensionMismatchError(
            f"无法复合：{B.label or 'B'} 的值域 {B.codomain.label} 与 {A.label or 'A'} 的定义域 {A.domain.label} 不同"
        )
    return Operator(
        matrix=matmul(A.matrix, B.matrix),
        domain=B.domain,
        codomain=A.codomain,
        label=f"{A.label}∘{B.label}" if A.label and B.label else "",
    )


def adjoint(T: Operator) -> Operator:
    """T*: Y* → X*，矩阵为转置（双线性配对下的 Banach 伴随）"""
    return Operator(
        matrix=np.array(T.matrix.T),
        domain=dual_space(T.codomain),
        codomain=dual_space(T.domain),
        label=f"{T.label}*" if T.label else "",
    )


def operator_space(X: NormedSpace, Y: NormedSpace, options: SolverOptions | None = None) -> NormedSpace:
    """
    L(X,Y)，坐标为 dim(Y)×dim(X) 矩阵按行展平

    Raises:
        GuardrailExceededError: dim(X)·dim(Y) 超过 operator_space_dim
    """
    options = options or SolverOptions()
    dim = X.dim * Y.dim
    if dim > options.operator_space_dim:
        raise GuardrailExceededError(
            f"L({X.label},{Y.label}) 的维数 {dim} 超过保护阈值 {options.operator_space_dim}"
        )
    if X.field != Y.field:
        raise DimensionMismatchError(f"{X.label} 与 {Y.label} 的标量域不同")
    return NormedSpace(
        label=f"L({X.label},{Y.label})",
        dim=dim,
        field=X.field,
        kind=NormKind.OPERATOR_SPACE,
        left=X,
        right=Y,
    )


def as_space_vector(T: Operator) -> np.ndarray:
    return T.matrix.reshape(-1)


def from_space_vector(space: NormedSpace, vector: np.ndarray, label: str = "") -> Operator:
    """算子空间中的坐标向量还原为算子"""
    if space.kind != NormKind.OPERATOR_SPACE:
        raise DimensionMismatchError(f"{space.label} 不是算子空间")
    matrix = np.asarray(vector).reshape(space.right.dim, space.left.dim)
    return Operator(matrix=matrix, domain=space.left, codomain=space.right, label=label)
