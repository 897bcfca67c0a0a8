"""
范数几何：范数求值、对偶范数、对偶空间、支撑点、对偶映射、范数泛函与极点

泛函与向量的配对一律为双线性 Σ f_i x_i。实多面体空间（含 ℓ_1、ℓ_∞ 及其张量积、
算子空间）走精确有理数路径；顶点/面数据按空间签名缓存。
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from itertools import product
from typing import Any, Callable

import numpy as np
from scipy.optimize import linprog

from ..exceptions import GuardrailExceededError, NotOnSphereError, UnsupportedNormError
from ..models import (
    Functional,
    NormedSpace,
    NormKind,
    Operator,
    PolyhedralData,
    SolverOptions,
    TensorElement,
)
from ..utils import from_params, make_rng, multistart_maximize, random_vectors, to_params
from .polytope import Point, facets_from_vertices, vertices_from_facets
from .scalars import coerce_vector, dedupe_points, exact_zeros, is_exact, to_float

# 隐式 ℓ_∞ 顶点（2^n 个）的维数上限
IMPLICIT_CUBE_DIM = 16

_CACHE: dict[tuple, Any] = {}
_CACHE_LOCK = threading.Lock()


def _cached(space: NormedSpace, key: str, builder: Callable[[], Any]) -> Any:
    cache_key = (space.signature, key)
    with _CACHE_LOCK:
        if cache_key in _CACHE:
            return _CACHE[cache_key]
    value = builder()
    with _CACHE_LOCK:
        return _CACHE.setdefault(cache_key, value)


def conjugate_exponent(p: float) -> float:
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1)


def euclidean_pair(left: NormedSpace, right: NormedSpace) -> bool:
    return left.is_euclidean and right.is_euclidean and left.field == right.field


# ---------------------------------------------------------------------------
# 多面体数据
# ---------------------------------------------------------------------------


def is_polyhedral(space: NormedSpace) -> bool:
    """单位球是否为（实）多面体"""
    if not space.is_real:
        return False
    kind = space.kind
    if kind == NormKind.POLYHEDRAL:
        return True
    if kind == NormKind.LP:
        return space.p == 1 or math.isinf(space.p)
    if kind == NormKind.DUAL_OF:
        return is_polyhedral(space.predual)
    if kind in (NormKind.TENSOR_PI, NormKind.TENSOR_EPS, NormKind.OPERATOR_SPACE):
        return is_polyhedral(space.left) and is_polyhedral(space.right)
    return False


def _signed_basis(dim: int) -> list[Point]:
    points = []
    for i in range(dim):
        for sign in (1, -1):
            points.append(tuple(Fraction(sign if j == i else 0) for j in range(dim)))
    return points


def _sign_vectors(dim: int) -> list[Point]:
    if dim > IMPLICIT_CUBE_DIM:
        raise GuardrailExceededError(f"ℓ_∞^{dim} 的顶点个数 2^{dim} 过多")
    return [tuple(Fraction(s) for s in signs) for signs in product((1, -1), repeat=dim)]


def _products(left: list[Point], right: list[Point]) -> list[Point]:
    return dedupe_points(tuple(a * b for a in u for b in v) for u in left for v in right)


def _build_vertices(space: NormedSpace, options: SolverOptions) -> list[Point]:
    kind = space.kind
    guard = options.polytope_dim
    if kind == NormKind.LP:
        return _signed_basis(space.dim) if space.p == 1 else _sign_vectors(space.dim)
    if kind == NormKind.POLYHEDRAL:
        data = space.polyhedral
        if data.vertices is not None:
            return list(data.vertices)
        return vertices_from_facets(data.facets, guard)
    if kind == NormKind.DUAL_OF:
        return ball_facets(space.predual, options)
    if kind == NormKind.TENSOR_PI:
        return _products(ball_vertices(space.left, options), ball_vertices(space.right, options))
    return vertices_from_facets(ball_facets(space, options), guard)


def _build_facets(space: NormedSpace, options: SolverOptions) -> list[Point]:
    kind = space.kind
    guard = options.polytope_dim
    if kind == NormKind.LP:
        return _sign_vectors(space.dim) if space.p == 1 else _signed_basis(space.dim)
    if kind == NormKind.POLYHEDRAL:
        data = space.polyhedral
        if data.facets is not None:
            return list(data.facets)
        return facets_from_vertices(data.vertices, guard)
    if kind == NormKind.DUAL_OF:
        return ball_vertices(space.predual, options)
    if kind == NormKind.TENSOR_EPS:
        return _products(ball_facets(space.left, options), ball_facets(space.right, options))
    if kind == NormKind.OPERATOR_SPACE:
        # |g(Tv)| ≤ 1，g 取值域的面，v 取定义域的顶点
        return _products(ball_facets(space.right, options), ball_vertices(space.left, options))
    return facets_from_vertices(ball_vertices(space, options), guard)


def ball_vertices(space: NormedSpace, options: SolverOptions | None = None) -> list[Point]:
    """单位球的顶点（精确有理数）"""
    options = options or SolverOptions()
    if not is_polyhedral(space):
        raise UnsupportedNormError(f"{space.label}: 不是实多面体范数，没有有限顶点集")
    return _cached(space, "vertices", lambda: _build_vertices(space, options))


def ball_facets(space: NormedSpace, options: SolverOptions | None = None) -> list[Point]:
    """单位球的面泛函（精确有理数），B_X = {x : f(x) ≤ 1}"""
    options = options or SolverOptions()
    if not is_polyhedral(space):
        raise UnsupportedNormError(f"{space.label}: 不是实多面体范数，没有有限面集")
    return _cached(space, "facets", lambda: _build_facets(space, options))


def try_vertices(space: NormedSpace, options: SolverOptions | None = None) -> list[Point] | None:
    if not is_polyhedral(space):
        return None
    try:
        return ball_vertices(space, options)
    except (GuardrailExceededError, UnsupportedNormError):
        return None


def try_facets(space: NormedSpace, options: SolverOptions | None = None) -> list[Point] | None:
    if not is_polyhedral(space):
        return None
    try:
        return ball_facets(space, options)
    except (GuardrailExceededError, UnsupportedNormError):
        return None


def float_points(space: NormedSpace, which: str, options: SolverOptions | None = None) -> np.ndarray:
    """顶点或面泛函的浮点矩阵（每行一个点）"""
    source = ball_vertices if which == "vertices" else ball_facets
    return _cached(
        space,
        f"{which}-float",
        lambda: np.array(source(space, options), dtype=object).astype(np.float64),
    )


def _max_pairing(points: list[Point], matrix: np.ndarray, x: np.ndarray) -> Any:
    if is_exact(x):
        return max(abs(sum((c * v for c, v in zip(p, x)), Fraction(0))) for p in points)
    return float(np.max(np.abs(matrix @ x)))


def _best_pairing(points: list[Point], matrix: np.ndarray, x: np.ndarray) -> tuple[int, Any]:
    """re p(x) 最大的点的下标与值"""
    if is_exact(x):
        values = [sum((c * v for c, v in zip(p, x)), Fraction(0)) for p in points]
        index = max(range(len(values)), key=lambda i: (values[i], -i))
        return index, values[index]
    values = np.real(matrix @ x)
    index = int(np.argmax(values))
    return index, float(values[index])


def norm_is_certified(space: NormedSpace, options: SolverOptions | None = None) -> bool:
    """eval_norm 在该空间上是否走确定性路径"""
    kind = space.kind
    if kind in (NormKind.LP, NormKind.EUCLIDEAN_WEIGHTED, NormKind.POLYHEDRAL):
        return True
    if try_facets(space, options) is not None:
        return True
    if kind == NormKind.DUAL_OF:
        return norm_is_certified(dual_space(space.predual), options)
    if kind in (NormKind.TENSOR_PI, NormKind.TENSOR_EPS):
        return euclidean_pair(space.left, space.right)
    if kind == NormKind.OPERATOR_SPACE:
        left, right = space.left, space.right
        if euclidean_pair(left, right):
            return True
        if try_vertices(left, options) is not None and norm_is_certified(right, options):
            return True
        return try_facets(right, options) is not None and norm_is_certified(
            dual_space(left), options
        )
    return False


# ---------------------------------------------------------------------------
# 范数与对偶范数
# ---------------------------------------------------------------------------


def _lp_norm(x: np.ndarray, p: float) -> Any:
    if is_exact(x) and (p == 1 or math.isinf(p)):
        magnitudes = [abs(v) for v in x]
        return sum(magnitudes, Fraction(0)) if p == 1 else Fraction(max(magnitudes))
    return float(np.linalg.norm(to_float(x), ord=p))


def _weighted_norm(x: np.ndarray, weights: tuple[float, ...]) -> float:
    values = to_float(x)
    return float(np.sqrt(np.sum(np.asarray(weights) * np.abs(values) ** 2)))


def _gauge(space: NormedSpace, x: np.ndarray, options: SolverOptions) -> float:
    """顶点凸包的 Minkowski 泛函：min Σλ, Σλ_k v_k = x, λ ≥ 0"""
    vertices = float_points(space, "vertices", options)
    result = linprog(
        np.ones(len(vertices)),
        A_eq=vertices.T,
        b_eq=to_float(x),
        bounds=(0, None),
        method="highs",
    )
    if result.status != 0:
        raise UnsupportedNormError(f"{space.label}: 顶点凸包不满维，规范函数无定义")
    return float(result.fun)


def eval_norm(space: NormedSpace, x: Any, options: SolverOptions | None = None) -> Any:
    """
    计算 ‖x‖

    Args:
        space: 赋范空间
        x: 坐标（精确 Fraction 数组时在多面体空间上返回 Fraction）
        options: 求解选项

    Returns:
        范数值
    """
    x = coerce_vector(space, x)
    kind = space.kind
    if kind == NormKind.LP:
        return _lp_norm(x, space.p)
    if kind == NormKind.EUCLIDEAN_WEIGHTED:
        return _weighted_norm(x, space.weights)
    if kind == NormKind.DUAL_OF:
        return dual_norm(space.predual, x, options)

    if is_polyhedral(space):
        facets = try_facets(space, options)
        if facets is not None:
            return _max_pairing(facets, float_points(space, "facets", options), x)
        if kind == NormKind.POLYHEDRAL:
            return _gauge(space, x, options or SolverOptions())

    if kind == NormKind.TENSOR_PI:
        from ..tensor.norms import pi_norm

        element = TensorElement(
            coefficients=x.reshape(space.left.dim, space.right.dim), left=space.left, right=space.right
        )
        return pi_norm(element, options).value
    if kind == NormKind.TENSOR_EPS:
        from ..tensor.norms import eps_norm

        element = TensorElement(
            coefficients=x.reshape(space.left.dim, space.right.dim), left=space.left, right=space.right
        )
        return eps_norm(element, options).value
    if kind == NormKind.OPERATOR_SPACE:
        from ..operators.core import op_norm

        operator = Operator(
            matrix=x.reshape(space.right.dim, space.left.dim), domain=space.left, codomain=space.right
        )
        return op_norm(operator, options).value
    raise UnsupportedNormError(f"{space.label}: 不支持的范数类型 {kind.value}")


def _coefficients(space: NormedSpace, f: Any) -> np.ndarray:
    if isinstance(f, Functional):
        return coerce_vector(space, f.coefficients)
    return coerce_vector(space, f)


def dual_space(space: NormedSpace) -> NormedSpace:
    """
    对偶空间 X*（与 X 同坐标，配对为 Σ f_i x_i）

    ℓ_p ↦ ℓ_q；加权欧氏权重取倒数；多面体交换顶点与面；
    (X⊗_πY)* = X*⊗_εY*，(X⊗_εY)* = X*⊗_πY*，L(X,Y)* = Y*⊗_πX；X** = X。
    """
    label = space.label[:-1] if space.label.endswith("*") else f"{space.label}*"
    kind = space.kind
    common = {"label": label, "dim": space.dim, "field": space.field}
    if kind == NormKind.LP:
        return NormedSpace(kind=NormKind.LP, p=conjugate_exponent(space.p), **common)
    if kind == NormKind.EUCLIDEAN_WEIGHTED:
        return NormedSpace(
            kind=NormKind.EUCLIDEAN_WEIGHTED, weights=tuple(1.0 / w for w in space.weights), **common
        )
    if kind == NormKind.POLYHEDRAL:
        data = space.polyhedral
        swapped = PolyhedralData(vertices=data.facets, facets=data.vertices)
        return NormedSpace(kind=NormKind.POLYHEDRAL, polyhedral=swapped, **common)
    if kind == NormKind.TENSOR_PI:
        return NormedSpace(
            kind=NormKind.TENSOR_EPS, left=dual_space(space.left), right=dual_space(space.right), **common
        )
    if kind == NormKind.TENSOR_EPS:
        return NormedSpace(
            kind=NormKind.TENSOR_PI, left=dual_space(space.left), right=dual_space(space.right), **common
        )
    if kind == NormKind.OPERATOR_SPACE:
        return NormedSpace(
            kind=NormKind.TENSOR_PI, left=dual_space(space.right), right=space.left, **common
        )
    return space.predual


def dual_norm(space: NormedSpace, f: Any, options: SolverOptions | None = None) -> Any:
    """
    ‖f‖_{X*} = sup{|f(x)| : x ∈ B_X}

    多面体空间取顶点上的最大值（精确），ℓ_p 用共轭指数，张量/算子空间转为对偶范数。
    """
    return eval_norm(dual_space(space), _coefficients(space, f), options)


def dual_norm_ascent(space: NormedSpace, f: Any, options: SolverOptions | None = None) -> float:
    """多起点上升求 sup re f(x)/‖x‖（下界），用于交叉检验闭式对偶范数"""
    options = options or SolverOptions()
    coefficients = to_float(_coefficients(space, f))
    complex_field = not space.is_real
    rng = make_rng(options.seed)
    starts = [to_params(v) for v in random_vectors(space.dim, options.starts, complex_field, rng)]

    def objective(params: np.ndarray) -> float:
        x = from_params(params, space.dim, complex_field)
        norm = float(eval_norm(space, x, options))
        if norm <= 1e-300:
            return 0.0
        return float(np.real(np.dot(coefficients, x))) / norm

    _, value = multistart_maximize(objective, starts, options.iterations, options.refine_top)
    return value


# ---------------------------------------------------------------------------
# 支撑点与对偶映射
# ---------------------------------------------------------------------------


def phase(values: np.ndarray) -> np.ndarray:
    """逐项的 conj(sgn)：实数取 ±1，复数取 conj(z)/|z|，零处取 1"""
    values = np.asarray(values)
    if is_exact(values):
        return np.array([Fraction(1) if v >= 0 else Fraction(-1) for v in values], dtype=object)
    if np.iscomplexobj(values):
        magnitudes = np.abs(values)
        out = np.ones(values.shape, dtype=np.complex128)
        nonzero = magnitudes > 0
        out[nonzero] = np.conj(values[nonzero]) / magnitudes[nonzero]
        return out
    return np.where(values >= 0, 1.0, -1.0)


def _scalar_phase(value: Any) -> Any:
    return phase(np.array([value]))[0]


def _pair(f: np.ndarray, x: np.ndarray) -> Any:
    if is_exact(f) and is_exact(x):
        return sum((a * b for a, b in zip(f, x)), Fraction(0))
    return np.dot(to_float(f), to_float(x))


def support_point(
    space: NormedSpace, f: Any, options: SolverOptions | None = None
) -> tuple[np.ndarray, Any]:
    """
    在 B_X 上最大化 re f(x)

    Returns:
        (最大点 x, 最大值)；最大值即 ‖f‖_{X*}（非精确路径为下界）
    """
    options = options or SolverOptions()
    f = _coefficients(space, f)
    kind = space.kind
    if not np.any(to_float(f) != 0):
        zero = exact_zeros(space.dim) if is_exact(f) else np.zeros(space.dim, dtype=space.dtype)
        return zero, 0

    vertices = try_vertices(space, options)
    if vertices is not None:
        index, value = _best_pairing(vertices, float_points(space, "vertices", options), f)
        point = np.array(vertices[index], dtype=object)
        return (point if is_exact(f) else point.astype(np.float64)), value

    if kind == NormKind.LP:
        p = space.p
        if p == 1:
            magnitudes = np.abs(to_float(f))
            i = int(np.argmax(magnitudes))
            x = np.zeros(space.dim, dtype=space.dtype)
            x[i] = _scalar_phase(to_float(f)[i])
            return x, float(magnitudes[i])
        if math.isinf(p):
            values = to_float(f)
            return phase(values).astype(space.dtype), float(np.sum(np.abs(values)))
        values = to_float(f)
        q = conjugate_exponent(p)
        scale = float(np.linalg.norm(values, ord=q))
        x = phase(values) * (np.abs(values) / scale) ** (q - 1)
        return x.astype(space.dtype), scale
    if kind == NormKind.EUCLIDEAN_WEIGHTED:
        values = to_float(f)
        weights = np.asarray(space.weights)
        scale = float(np.sqrt(np.sum(np.abs(values) ** 2 / weights)))
        return np.conj(values) / (weights * scale), scale
    if kind == NormKind.DUAL_OF:
        return duality_map(space.predual, f, options), eval_norm(space.predual, f, options)

    from ..tensor.norms import eps_norm, pi_norm

    if kind == NormKind.TENSOR_PI:
        matrix = f.reshape(space.left.dim, space.right.dim)
        eps = eps_norm(
            TensorElement(coefficients=matrix, left=dual_space(space.left), right=dual_space(space.right)),
            options,
        )
        point = np.outer(eps.left_functional, eps.right_functional).reshape(-1)
        value = _pair(f, point)
        point = point * _scalar_phase(value)
        return point, abs(value)

    if kind == NormKind.TENSOR_EPS:
        element = TensorElement(
            coefficients=f.reshape(space.left.dim, space.right.dim),
            left=dual_space(space.left),
            right=dual_space(space.right),
        )
    else:
        element = TensorElement(
            coefficients=f.reshape(space.right.dim, space.left.dim),
            left=dual_space(space.right),
            right=space.left,
        )
    pi = pi_norm(element, options)
    point = pi.dual_certificate.reshape(-1)
    return point, float(np.real(_pair(f, point)))


def duality_map(space: NormedSpace, x: Any, options: SolverOptions | None = None) -> np.ndarray:
    """
    取一个范数泛函 J(x)：‖J(x)‖_{X*} = 1 且 J(x)(x) = ‖x‖

    Raises:
        ValueError: x = 0
    """
    options = options or SolverOptions()
    x = coerce_vector(space, x)
    if not np.any(to_float(x) != 0):
        raise ValueError(f"{space.label}: 零向量没有范数泛函")
    kind = space.kind

    facets = try_facets(space, options)
    if facets is not None:
        index, _ = _best_pairing(facets, float_points(space, "facets", options), x)
        functional = np.array(facets[index], dtype=object)
        return functional if is_exact(x) else functional.astype(np.float64)

    if kind == NormKind.LP:
        values = to_float(x)
        p = space.p
        if math.isinf(p):
            i = int(np.argmax(np.abs(values)))
            out = np.zeros(space.dim, dtype=space.dtype)
            out[i] = _scalar_phase(values[i])
            return out
        norm = float(np.linalg.norm(values, ord=p))
        return (phase(values) * (np.abs(values) / norm) ** (p - 1)).astype(space.dtype)
    if kind == NormKind.EUCLIDEAN_WEIGHTED:
        values = to_float(x)
        return np.asarray(space.weights) * np.conj(values) / _weighted_norm(values, space.weights)
    if kind == NormKind.DUAL_OF:
        point, _ = support_point(space.predual, x, options)
        return point

    if kind == NormKind.OPERATOR_SPACE:
        from ..operators.core import op_norm

        operator = Operator(
            matrix=x.reshape(space.right.dim, space.left.dim), domain=space.left, codomain=space.right
        )
        witness = op_norm(operator, options).witness
        image = operator.apply(witness)
        g = duality_map(space.right, image, options)
        return np.outer(g, witness).reshape(-1)

    from ..tensor.norms import eps_norm, pi_norm

    element = TensorElement(
        coefficients=x.reshape(space.left.dim, space.right.dim), left=space.left, right=space.right
    )
    if kind == NormKind.TENSOR_PI:
        return pi_norm(element, options).dual_certificate.reshape(-1)
    eps = eps_norm(element, options)
    functional = np.outer(eps.left_functional, eps.right_functional).reshape(-1)
    return functional * _scalar_phase(_pair(functional, x))


def norming_functionals(
    space: NormedSpace,
    x: Any,
    delta: Any = 0,
    n_samples: int = 16,
    options: SolverOptions | None = None,
) -> list[Functional]:
    """
    范数泛函集合 {f ∈ S_{X*} : re f(x) > 1 − δ}

    多面体空间返回全部满足条件的面泛函（δ = 0 时为包含 x 的所有面）；
    其他空间返回对偶映射的像，δ > 0 时再加上向随机单位泛函方向的可行凸组合。

    Raises:
        NotOnSphereError: ‖x‖ ≠ 1
    """
    options = options or SolverOptions()
    x = coerce_vector(space, x)
    norm = eval_norm(space, x, options)
    tolerance = options.exact_tol if isinstance(norm, Fraction) else options.opt_tol
    if abs(float(norm) - 1) > tolerance:
        raise NotOnSphereError(f"{space.label}: 向量不在单位球面上，‖x‖ = {float(norm):.6g}")

    facets = try_facets(space, options)
    if facets is not None:
        selected = []
        for facet in facets:
            value = _pair(np.array(facet, dtype=object), x)
            if delta == 0:
                admitted = abs(value - 1) <= options.facet_tol
            else:
                admitted = value > 1 - delta
            if admitted:
                selected.append(Functional(coefficients=np.array(facet, dtype=object), space=space))
        return selected

    base = duality_map(space, x, options)
    functionals = [Functional(coefficients=base, space=space)]
    if delta == 0:
        return functionals
    rng = make_rng(options.seed)
    for w in random_vectors(space.dim, n_samples, not space.is_real, rng):
        g = duality_map(space, w, options)
        gap = 1 - float(np.real(_pair(g, x)))
        t = 1.0 if gap <= 0 else min(1.0, 0.5 * float(delta) / gap)
        mix = (1 - t) * to_float(base) + t * to_float(g)
        # 凸组合的对偶范数可能小于 1，归一化后 re x*(x) 只会变大
        size = float(dual_norm(space, mix, options))
        if size > 0:
            functionals.append(Functional(coefficients=mix / size, space=space))
    return functionals


def extreme_points(space: NormedSpace, options: SolverOptions | None = None) -> list[np.ndarray]:
    """
    实多面体单位球的全部顶点

    Raises:
        UnsupportedNormError: 光滑范数或复数域（没有有限极点集）
    """
    if not is_polyhedral(space):
        raise UnsupportedNormError(f"{space.label}: 非多面体范数没有有限极点集，请使用采样路径")
    return [np.array(v, dtype=object) for v in ball_vertices(space, options)]
