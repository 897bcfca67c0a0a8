"""
数值域、数值半径、松弛半径 v_δ 与 Daugavet 缺陷

三条计算路径：
- 多面体实空间：枚举 (顶点 v, 面泛函 f) 对，f(v) = 1 的“关联对”给出 V(T) 的有限部分，
  v(T) 在关联对上精确取到；
- Hilbert 空间（ℓ_2 及加权欧氏）：转到正交坐标后用闭式内层最大化 / 特征值；
- 其他空间：对偶映射给出的状态，v_δ 再做 x 与 x* 的交替上升，启发式。
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Any, Callable, NamedTuple, Sequence

import numpy as np
from scipy.optimize import linprog, minimize_scalar

from ..exceptions import NotEndomorphismError
from ..geometry.norms import (
    dual_norm,
    duality_map,
    eval_norm,
    is_polyhedral,
    support_point,
    try_facets,
    try_vertices,
)
from ..geometry.scalars import dedupe_points, exact_identity, is_exact, to_float
from ..geometry.spaces import sample_sphere
from ..models import (
    DaugavetResult,
    NormedSpace,
    NormKind,
    Operator,
    RadiusResult,
    SolverOptions,
    StatePair,
)
from ..operators.core import op_norm
from ..utils import from_params, make_rng, multistart_maximize, random_vectors, to_params

# 复 Hilbert 空间数值半径的 θ 网格大小
THETA_GRID = 48

# 一般空间 v_δ 的交替上升轮数与线段步长
ALTERNATING_ROUNDS = 12
STEP_FRACTIONS = (1.0, 0.5, 0.25, 0.125, 0.0625)

FACE_LP_OPTIONS = {"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10}


def check_endomorphism(T: Operator) -> None:
    if not T.is_endomorphism:
        raise NotEndomorphismError(
            f"{T.label or '算子'} 不是自同态：定义域 {T.domain.label}，值域 {T.codomain.label}"
        )


# ---------------------------------------------------------------------------
# 多面体：顶点-面对
# ---------------------------------------------------------------------------


class PairData(NamedTuple):
    """单位球顶点、对偶球顶点，以及 f(v) = 1 的关联对"""
    vertices: list
    facets: list
    pairs: list[tuple[int, int]]
    vertex_matrix: np.ndarray
    facet_matrix: np.ndarray
    pairing: np.ndarray


_PAIR_CACHE: dict[tuple, PairData] = {}
_PAIR_LOCK = threading.Lock()


def pair_data(space: NormedSpace, options: SolverOptions | None = None) -> PairData | None:
    """顶点与面都能在保护阈值内得到时返回关联对数据，否则 None"""
    with _PAIR_LOCK:
        if space.signature in _PAIR_CACHE:
            return _PAIR_CACHE[space.signature]
    vertices = try_vertices(space, options)
    facets = try_facets(space, options)
    if vertices is None or facets is None:
        return None
    pairs = []
    for i, v in enumerate(vertices):
        for j, f in enumerate(facets):
            if sum((a * b for a, b in zip(f, v)), Fraction(0)) == 1:
                pairs.append((i, j))
    vertex_matrix = np.array(vertices, dtype=object).astype(np.float64)
    facet_matrix = np.array(facets, dtype=object).astype(np.float64)
    data = PairData(
        vertices=vertices,
        facets=facets,
        pairs=pairs,
        vertex_matrix=vertex_matrix,
        facet_matrix=facet_matrix,
        pairing=facet_matrix @ vertex_matrix.T,
    )
    with _PAIR_LOCK:
        return _PAIR_CACHE.setdefault(space.signature, data)


def _exact_pair_value(matrix: np.ndarray, data: PairData, i: int, j: int) -> Any:
    v = np.array(data.vertices[i], dtype=object)
    f = np.array(data.facets[j], dtype=object)
    return f.dot(matrix.dot(v))


def _pair_state(data: PairData, i: int, j: int, exact: bool) -> StatePair:
    x = np.array(data.vertices[i], dtype=object)
    f = np.array(data.facets[j], dtype=object)
    gap = 1 - f.dot(x)
    if not exact:
        return StatePair(x=x.astype(np.float64), x_star=f.astype(np.float64), gap=float(gap))
    return StatePair(x=x, x_star=f, gap=gap)


def _incident_extreme(T: Operator, data: PairData, real_part: bool) -> tuple[Any, StatePair]:
    """关联对上 |f(Tv)|（或 re f(Tv)）的最大值"""
    if T.is_exact:
        best, best_pair = None, data.pairs[0]
        for i, j in data.pairs:
            value = _exact_pair_value(T.matrix, data, i, j)
            score = value if real_part else abs(value)
            if best is None or score > best:
                best, best_pair = score, (i, j)
        return best, _pair_state(data, *best_pair, exact=True)
    images = data.vertex_matrix @ to_float(T.matrix).T
    rows = np.array([i for i, _ in data.pairs])
    cols = np.array([j for _, j in data.pairs])
    values = np.sum(images[rows] * data.facet_matrix[cols], axis=1)
    scores = values if real_part else np.abs(values)
    k = int(np.argmax(scores))
    return float(scores[k]), _pair_state(data, rows[k], cols[k], exact=False)


def _relaxed_extreme(T: Operator, data: PairData, delta: Any) -> tuple[Any, StatePair]:
    """所有 f(v) > 1 − δ 的 (顶点, 面) 对上 |f(Tv)| 的最大值"""
    if T.is_exact and isinstance(delta, (Fraction, int)):
        best, best_pair = None, None
        for i, v in enumerate(data.vertices):
            image = T.matrix.dot(np.array(v, dtype=object))
            for j, f in enumerate(data.facets):
                if sum((a * b for a, b in zip(f, v)), Fraction(0)) > 1 - delta:
                    value = abs(sum((a * b for a, b in zip(f, image)), Fraction(0)))
                    if best is None or value > best:
                        best, best_pair = value, (i, j)
        return best, _pair_state(data, *best_pair, exact=True)
    values = np.abs(data.facet_matrix @ to_float(T.matrix) @ data.vertex_matrix.T)
    admissible = data.pairing > 1 - float(delta)
    masked = np.where(admissible, values, -1.0)
    j, i = np.unravel_index(int(np.argmax(masked)), masked.shape)
    return float(masked[j, i]), _pair_state(data, int(i), int(j), exact=False)


# ---------------------------------------------------------------------------
# 多面体：只有面泛函（顶点枚举超出保护阈值）
# ---------------------------------------------------------------------------


class FaceData(NamedTuple):
    """面泛函矩阵，以及 ±f 去重后的代表"""
    facet_matrix: np.ndarray
    representatives: np.ndarray


def face_data(space: NormedSpace, options: SolverOptions | None = None) -> FaceData | None:
    """实多面体空间只能得到面泛函时返回面数据；顶点也可得时走关联对，返回 None"""
    if not is_polyhedral(space) or pair_data(space, options) is not None:
        return None
    facets = try_facets(space, options)
    if facets is None:
        return None
    return FaceData(
        facet_matrix=np.array(facets, dtype=object).astype(np.float64),
        representatives=np.array(dedupe_points(facets, up_to_sign=True), dtype=object).astype(np.float64),
    )


def _face_lp(objective: np.ndarray, data: FaceData, face: np.ndarray | None) -> tuple[float, np.ndarray] | None:
    """在 B_X 上（face 给出时在面 {f(x) = 1} 上）最大化 c·x"""
    result = linprog(
        -objective,
        A_ub=data.facet_matrix,
        b_ub=np.ones(len(data.facet_matrix)),
        A_eq=None if face is None else face[None, :],
        b_eq=None if face is None else np.ones(1),
        bounds=(None, None),
        method="highs",
        options=FACE_LP_OPTIONS,
    )
    if result.status != 0:
        return None
    return -float(result.fun), result.x


def _face_extreme(T: Operator, data: FaceData, real_part: bool) -> tuple[float, StatePair]:
    """
    v(T) = max_f max{|f(Tx)| : x ∈ B_X, f(x) = 1}，f 取对偶球的顶点即面泛函；
    f 与 −f 的面给出同一组值，只遍历代表
    """
    matrix = to_float(T.matrix)
    signs = (1.0,) if real_part else (1.0, -1.0)
    best_value, best = -math.inf, None
    for f in data.representatives:
        pulled = matrix.T @ f
        for sign in signs:
            solved = _face_lp(sign * pulled, data, f)
            if solved is None:
                continue
            value, x = solved
            if value > best_value:
                best_value, best = value, StatePair(x=x, x_star=f, gap=1.0 - float(f @ x))
    return best_value, best


# ---------------------------------------------------------------------------
# Hilbert 空间
# ---------------------------------------------------------------------------


def hilbert_weights(space: NormedSpace) -> np.ndarray | None:
    """ℓ_2 与加权欧氏空间返回权重，其余 None"""
    if space.is_euclidean:
        return np.ones(space.dim)
    if space.kind == NormKind.EUCLIDEAN_WEIGHTED:
        return np.asarray(space.weights, dtype=np.float64)
    return None


def _orthonormal_matrix(T: Operator, weights: np.ndarray) -> np.ndarray:
    """z = W^{1/2} x 坐标下的矩阵 W^{1/2} A W^{-1/2}"""
    root = np.sqrt(weights)
    return (root[:, None] * to_float(T.matrix)) / root[None, :]


def _to_original(z: np.ndarray, g: np.ndarray, weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    root = np.sqrt(weights)
    return z / root, g * root


def _hilbert_inner(matrix: np.ndarray, z: np.ndarray, delta: float) -> tuple[float, np.ndarray]:
    """
    固定单位向量 z，在 {y : ‖y‖ ≤ 1, re⟨z, y⟩ ≥ 1−δ} 上最大化 |⟨Tz, y⟩|

    Returns:
        (最大值, 取到最大值的泛函系数 conj(y))
    """
    w = matrix @ z
    a = np.vdot(z, w)
    total = float(np.linalg.norm(w))
    r = math.sqrt(max(total**2 - abs(a) ** 2, 0.0))
    lower = max(1.0 - delta, 0.0)
    rho = abs(a) / total if total > 0 else 1.0
    rotate = np.conj(a) / abs(a) if abs(a) > 0 else 1.0
    if rho >= lower:
        y = rotate * w / total if total > 0 else z
        return total, np.conj(y)
    slack = math.sqrt(delta * (2.0 - delta))
    u = (w - a * z) / r
    y = lower * z + slack * rotate * u
    return lower * abs(a) + slack * r, np.conj(y)


def _unit(params: np.ndarray, dim: int, complex_field: bool) -> np.ndarray:
    z = from_params(params, dim, complex_field)
    norm = np.linalg.norm(z)
    return z / norm if norm > 0 else z


def _hilbert_starts(dim: int, complex_field: bool, options: SolverOptions) -> list[np.ndarray]:
    rng = make_rng(options.seed)
    starts = [to_params(v) for v in random_vectors(dim, options.starts, complex_field, rng)]
    basis = np.eye(dim, dtype=np.complex128 if complex_field else np.float64)
    starts.extend(to_params(e) for e in basis)
    return starts


def _hilbert_v_delta(
    T: Operator, weights: np.ndarray, delta: float, options: SolverOptions
) -> tuple[float, StatePair]:
    matrix = _orthonormal_matrix(T, weights)
    complex_field = not T.domain.is_real
    dim = T.domain.dim

    def objective(params: np.ndarray) -> float:
        z = _unit(params, dim, complex_field)
        if not np.any(z):
            return 0.0
        return _hilbert_inner(matrix, z, delta)[0]

    # 取到 v(T) 的向量也作为起点，保证 v_δ ≥ v(T)
    starts = _hilbert_starts(dim, complex_field, options)
    starts.append(to_params(_radius_vector(matrix, complex_field)[1]))
    params, _ = multistart_maximize(objective, starts, options.iterations, options.refine_top)
    z = _unit(params, dim, complex_field)
    value, g = _hilbert_inner(matrix, z, delta)
    x, f = _to_original(z, g, weights)
    gap = 1.0 - float(np.real(np.dot(f, x)))
    return value, StatePair(x=x, x_star=f, gap=gap)


def _hermitian_top(matrix: np.ndarray) -> tuple[float, np.ndarray]:
    values, vectors = np.linalg.eigh((matrix + matrix.conj().T) / 2)
    return float(values[-1]), vectors[:, -1]


def _radius_vector(matrix: np.ndarray, complex_field: bool) -> tuple[float, np.ndarray]:
    """正交坐标下的 v(T) 与取到它的单位向量"""
    if not complex_field:
        symmetric = (matrix + matrix.T) / 2
        values, vectors = np.linalg.eigh(symmetric)
        k = int(np.argmax(np.abs(values)))
        return float(abs(values[k])), vectors[:, k]

    thetas = np.linspace(0.0, 2 * math.pi, THETA_GRID, endpoint=False)
    rotated = np.exp(1j * thetas)[:, None, None] * matrix[None, :, :]
    tops = np.linalg.eigvalsh((rotated + np.conj(np.swapaxes(rotated, 1, 2))) / 2)[:, -1]
    start = float(thetas[int(np.argmax(tops))])
    step = 2 * math.pi / THETA_GRID
    refined = minimize_scalar(
        lambda t: -_hermitian_top(np.exp(1j * t) * matrix)[0],
        bounds=(start - step, start + step),
        method="bounded",
        options={"xatol": 1e-12},
    )
    theta = float(refined.x) if -refined.fun >= tops.max() else start
    _, z = _hermitian_top(np.exp(1j * theta) * matrix)
    return float(abs(np.vdot(z, matrix @ z))), z


def _hilbert_radius(T: Operator, weights: np.ndarray) -> tuple[float, StatePair]:
    """v(T) = max_θ λ_max(Re(e^{iθ}T))；实空间为对称部分特征值绝对值的最大值"""
    value, z = _radius_vector(_orthonormal_matrix(T, weights), not T.domain.is_real)
    x, f = _to_original(z, np.conj(z), weights)
    return value, StatePair(x=x, x_star=f, gap=0.0)


# ---------------------------------------------------------------------------
# 一般空间：对偶映射状态
# ---------------------------------------------------------------------------


def _candidates(space: NormedSpace, options: SolverOptions) -> list[np.ndarray]:
    points = sample_sphere(space, options.starts, options=options)
    for i in range(space.dim):
        e = np.zeros(space.dim, dtype=space.dtype)
        e[i] = 1
        points.append(e / float(eval_norm(space, e, options)))
    return points


def _refinable(space: NormedSpace) -> bool:
    """对偶映射有闭式时才做局部优化"""
    return space.kind in (NormKind.LP, NormKind.EUCLIDEAN_WEIGHTED)


def _unit_functional(space: NormedSpace, f: np.ndarray, options: SolverOptions) -> np.ndarray:
    size = float(dual_norm(space, f, options))
    return f / size if size > 0 else f


def _segment_value(
    T: Operator, x: np.ndarray, delta: float, options: SolverOptions
) -> tuple[float, StatePair]:
    """
    固定 x 选 x*：在 J(x) 与 Tx 的范数泛函 g 之间取线段 f_t = (1−t)J(x) + t·g，
    re f_t(x) > 1−δ 等价于 t < δ/(1 − re g(x))；|f_t(Tx)| 关于 t 凸，只需看端点
    """
    space = T.domain
    matrix = to_float(T.matrix)
    base = to_float(duality_map(space, x, options))
    image = matrix @ x
    best_value = float(abs(np.dot(base, image)))
    best = StatePair(x=x, x_star=base, gap=1.0 - float(np.real(np.dot(base, x))))
    if not np.any(image != 0):
        return best_value, best
    g = to_float(duality_map(space, image, options))
    gap = 1.0 - float(np.real(np.dot(g, x)))
    t = 1.0 if gap < delta else (1.0 - 1e-12) * delta / gap
    mix = _unit_functional(space, (1 - t) * base + t * g, options)
    value = float(abs(np.dot(mix, image)))
    if value > best_value:
        best_value = value
        best = StatePair(x=x, x_star=mix, gap=1.0 - float(np.real(np.dot(mix, x))))
    return best_value, best


def _point_step(
    T: Operator, state: StatePair, delta: float, options: SolverOptions
) -> tuple[float, StatePair] | None:
    """
    固定 x* 选 x：沿 x → y 的线段（y 为 u ↦ x*(Tu) 的支撑点）取仍满足
    re x*(x) > 1−δ 且 |x*(Tx)| 最大的点
    """
    space = T.domain
    matrix = to_float(T.matrix)
    f = np.asarray(state.x_star)
    current = np.asarray(state.x)
    value = np.dot(f, matrix @ current)
    rotation = np.conj(value) / abs(value) if abs(value) > 0 else 1.0
    y, _ = support_point(space, rotation * (f @ matrix), options)
    y = to_float(y)
    best = None
    best_value = float(abs(value))
    for s in STEP_FRACTIONS:
        trial = (1 - s) * current + s * y
        norm = float(eval_norm(space, trial, options))
        if norm <= 1e-300:
            continue
        trial = trial / norm
        gap = 1.0 - float(np.real(np.dot(f, trial)))
        if gap >= delta:
            continue
        trial_value = float(abs(np.dot(f, matrix @ trial)))
        if trial_value > best_value:
            best_value = trial_value
            best = StatePair(x=trial, x_star=f, gap=gap)
    return None if best is None else (best_value, best)


def _alternating_ascent(
    T: Operator, value: float, state: StatePair, delta: float, options: SolverOptions
) -> tuple[float, StatePair]:
    """v_δ 的下界：从给定状态出发交替更新 x 与 x*，每步只接受使 |x*(Tx)| 增大的更新"""
    for _ in range(ALTERNATING_ROUNDS):
        moved = _point_step(T, state, delta, options)
        if moved is None:
            break
        point_value, point_state = moved
        functional_value, functional_state = _segment_value(T, point_state.x, delta, options)
        if functional_value > point_value:
            point_value, point_state = functional_value, functional_state
        if point_value <= value + 1e-12:
            break
        value, state = point_value, point_state
    return value, state


def _state_value(T: Operator, x: np.ndarray, options: SolverOptions, real_part: bool) -> tuple[float, StatePair]:
    f = to_float(duality_map(T.domain, x, options))
    value = np.dot(f, to_float(T.matrix) @ x)
    score = float(np.real(value)) if real_part else float(abs(value))
    return score, StatePair(x=x, x_star=f, gap=1.0 - float(np.real(np.dot(f, x))))


def _maximize_states(
    T: Operator,
    evaluate: Callable[[np.ndarray], tuple[float, StatePair]],
    options: SolverOptions,
) -> tuple[float, StatePair]:
    """在候选单位向量上最大化，闭式空间再做 Nelder-Mead 局部优化"""
    space = T.domain
    best_value, best_state = -math.inf, None
    scored = []
    for x in _candidates(space, options):
        value, state = evaluate(x)
        scored.append((value, x))
        if value > best_value:
            best_value, best_state = value, state
    if not _refinable(space):
        return best_value, best_state

    complex_field = not space.is_real

    def objective(params: np.ndarray) -> float:
        x = from_params(params, space.dim, complex_field)
        norm = float(eval_norm(space, x, options))
        if norm <= 1e-300:
            return -1e300
        return evaluate(x / norm)[0]

    scored.sort(key=lambda item: -item[0])
    starts = [to_params(x) for _, x in scored[: options.refine_top]]
    params, value = multistart_maximize(objective, starts, options.iterations, options.refine_top)
    if value > best_value:
        x = from_params(params, space.dim, complex_field)
        best_value, best_state = evaluate(x / float(eval_norm(space, x, options)))
    return best_value, best_state


# ---------------------------------------------------------------------------
# 公开接口
# ---------------------------------------------------------------------------


def numerical_range_sample(
    T: Operator, n_samples: int = 64, options: SolverOptions | None = None
) -> list[Any]:
    """
    V(T) 的样本

    多面体空间返回全部关联对上的 f(Tv)（精确有限集）；
    其他空间取随机单位向量 x 与 J(x)，返回 J(x)(Tx)。
    """
    check_endomorphism(T)
    options = options or SolverOptions()
    data = pair_data(T.domain, options)
    if data is not None:
        if T.is_exact:
            return [_exact_pair_value(T.matrix, data, i, j) for i, j in data.pairs]
        images = data.vertex_matrix @ to_float(T.matrix).T
        return [float(np.dot(data.facet_matrix[j], images[i])) for i, j in data.pairs]
    samples = []
    matrix = to_float(T.matrix)
    for x in sample_sphere(T.domain, n_samples, options=options):
        f = to_float(duality_map(T.domain, x, options))
        value = np.dot(f, matrix @ x)
        samples.append(complex(value) if not T.domain.is_real else float(np.real(value)))
    return samples


def _v_delta_state(
    T: Operator, delta: Any, options: SolverOptions
) -> tuple[Any, StatePair, bool]:
    data = pair_data(T.domain, options)
    if data is not None:
        value, state = _relaxed_extreme(T, data, delta)
        return value, state, True
    weights = hilbert_weights(T.domain)
    if weights is not None:
        value, state = _hilbert_v_delta(T, weights, float(delta), options)
        return value, state, False
    value, state = _maximize_states(T, lambda x: _segment_value(T, x, float(delta), options), options)
    value, state = _alternating_ascent(T, value, state, float(delta), options)
    return value, state, False


def v_delta(
    T: Operator,
    delta: Any,
    A: Sequence[Any] | None = None,
    B: Sequence[Any] | None = None,
    options: SolverOptions | None = None,
) -> Any:
    """
    v_δ(T) = sup{|x*(Tx)| : x ∈ B_X, x* ∈ B_{X*}, re x*(x) > 1−δ}

    给定有限集 A（conv(A) = B_X）与 B（conv(B) = B_{X*}）时在 A×B 上取最大值。

    Raises:
        ValueError: δ ≤ 0，或给定集合中没有满足条件的对
        NotEndomorphismError: T 不是自同态
    """
    check_endomorphism(T)
    options = options or SolverOptions()
    if delta <= 0:
        raise ValueError(f"δ 必须为正数，当前为 {delta}")
    if A is not None or B is not None:
        return _v_delta_finite(T, delta, A, B, options)
    value, _, _ = _v_delta_state(T, delta, options)
    return value


def _v_delta_finite(
    T: Operator, delta: Any, A: Sequence[Any] | None, B: Sequence[Any] | None, options: SolverOptions
) -> Any:
    points = [np.asarray(a) for a in (A if A is not None else ball_points(T.domain, options, "vertices"))]
    functionals = [np.asarray(b) for b in (B if B is not None else ball_points(T.domain, options, "facets"))]
    best = None
    for x in points:
        image = _dot(T.matrix, x)
        for f in functionals:
            if np.real(_dot(f, x)) > 1 - delta:
                value = abs(_dot(f, image))
                if best is None or value > best:
                    best = value
    if best is None:
        raise ValueError("给定的点集与泛函集中没有满足 re x*(x) > 1−δ 的对")
    return best


def _dot(a: np.ndarray, b: np.ndarray) -> Any:
    if is_exact(a) and is_exact(b):
        return a.dot(b)
    return to_float(a) @ to_float(b)


def ball_points(space: NormedSpace, options: SolverOptions, which: str) -> list[np.ndarray]:
    source = try_vertices(space, options) if which == "vertices" else try_facets(space, options)
    if source is None:
        raise ValueError(f"{space.label}: 没有有限的{'顶点' if which == 'vertices' else '面'}集，请显式给出 A、B")
    return [np.array(p, dtype=object) for p in source]


def _schedule_levels(exact: bool, options: SolverOptions) -> list[Any]:
    if exact:
        return [Fraction(1, 4**k) for k in range(options.max_schedule_levels)]
    return [4.0**-k for k in range(options.max_schedule_levels)]


def _monotone(schedule: list[tuple[Any, Any]]) -> list[tuple[Any, Any]]:
    """δ 递减时 v_δ 不增：较小 δ 的可行对对较大 δ 同样可行，取后向累计最大"""
    result = list(schedule)
    for k in range(len(result) - 2, -1, -1):
        delta, value = result[k]
        if result[k + 1][1] > value:
            result[k] = (delta, result[k + 1][1])
    return result


def numerical_radius(T: Operator, options: SolverOptions | None = None) -> RadiusResult:
    """
    数值半径 v(T) = sup{|λ| : λ ∈ V(T)}

    多面体空间在关联对上精确计算，并附上直到稳定的精确 δ 序列；
    其他空间沿 δ = 1, 1/4, 1/16, … 计算 v_δ，相邻差小于 schedule_tol 时停止。
    """
    check_endomorphism(T)
    options = options or SolverOptions()
    data = pair_data(T.domain, options)
    if data is not None:
        value, state = _incident_extreme(T, data, real_part=False)
        schedule = []
        for delta in _schedule_levels(T.is_exact, options):
            level, _ = _relaxed_extreme(T, data, delta)
            schedule.append((delta, level))
            if abs(level - value) <= (0 if T.is_exact else options.exact_tol):
                break
        return RadiusResult(
            value=value,
            witness=state,
            exact=True,
            delta_schedule=_monotone(schedule),
            method="incident-pairs",
        )

    schedule, state = [], None
    previous = None
    for delta in _schedule_levels(False, options):
        level, state, _ = _v_delta_state(T, delta, options)
        schedule.append((delta, level))
        if previous is not None and abs(previous - level) < options.schedule_tol:
            break
        previous = level
    schedule = _monotone(schedule)
    method = "hilbert-schedule" if hilbert_weights(T.domain) is not None else "state-schedule"
    return RadiusResult(
        value=schedule[-1][1], witness=state, exact=False, delta_schedule=schedule, method=method
    )


def direct_radius(T: Operator, options: SolverOptions | None = None) -> RadiusResult:
    """
    不经 δ 序列的数值半径

    多面体空间：关联对（精确），顶点超出保护阈值时逐个面解线性规划；实 Hilbert：对称部分特征值；
    复 Hilbert：max_θ λ_max(Re e^{iθ}T)；其他空间：对偶映射状态上的最大值（启发式下界）。
    """
    check_endomorphism(T)
    options = options or SolverOptions()
    data = pair_data(T.domain, options)
    if data is not None:
        value, state = _incident_extreme(T, data, real_part=False)
        return RadiusResult(value=value, witness=state, exact=True, method="incident-pairs")
    faces = face_data(T.domain, options)
    if faces is not None:
        value, state = _face_extreme(T, faces, real_part=False)
        return RadiusResult(value=value, witness=state, exact=False, method="facet-lp")
    weights = hilbert_weights(T.domain)
    if weights is not None:
        value, state = _hilbert_radius(T, weights)
        return RadiusResult(value=value, witness=state, exact=True, method="hilbert-eigenvalues")
    value, state = _maximize_states(T, lambda x: _state_value(T, x, options, real_part=False), options)
    return RadiusResult(value=value, witness=state, exact=False, method="duality-states")


def sup_re_numerical_range(T: Operator, options: SolverOptions | None = None) -> tuple[Any, bool]:
    """sup re V(T)，返回 (值, 是否精确)"""
    check_endomorphism(T)
    options = options or SolverOptions()
    data = pair_data(T.domain, options)
    if data is not None:
        value, _ = _incident_extreme(T, data, real_part=True)
        return value, True
    faces = face_data(T.domain, options)
    if faces is not None:
        return _face_extreme(T, faces, real_part=True)[0], False
    weights = hilbert_weights(T.domain)
    if weights is not None:
        return _hermitian_top(_orthonormal_matrix(T, weights))[0], True
    value, _ = _maximize_states(T, lambda x: _state_value(T, x, options, real_part=True), options)
    return value, False


def identity_plus(T: Operator) -> Operator:
    if T.is_exact:
        matrix = T.matrix + exact_identity(T.domain.dim)
    else:
        matrix = T.matrix + np.eye(T.domain.dim, dtype=T.matrix.dtype)
    return Operator(matrix=matrix, domain=T.domain, codomain=T.codomain, label=f"Id+{T.label}")


def daugavet_defect(T: Operator, options: SolverOptions | None = None) -> DaugavetResult:
    """
    Daugavet 方程 ‖Id+T‖ = 1+‖T‖ 的缺陷与 sup re V(T)

    缺陷 ≤ 容差 当且仅当 ‖T‖ − sup re V(T) ≤ 容差。
    """
    check_endomorphism(T)
    norm = op_norm(T, options)
    norm_id = op_norm(identity_plus(T), options)
    sup_re, sup_exact = sup_re_numerical_range(T, options)
    return DaugavetResult(
        defect=1 + norm.value - norm_id.value,
        sup_re_v=sup_re,
        norm=norm.value,
        norm_id_plus=norm_id.value,
        exact=norm.exact and norm_id.exact and sup_exact,
    )


# ---------------------------------------------------------------------------
# 快速浮点求值器（数值指数估计使用）
# ---------------------------------------------------------------------------


def radius_evaluator(space: NormedSpace, options: SolverOptions | None = None) -> Callable[[np.ndarray], float] | None:
    """返回矩阵 ↦ v(T) 的浮点函数；没有确定性快速路径时返回 None"""
    data = pair_data(space, options)
    if data is not None:
        rows = np.array([i for i, _ in data.pairs])
        cols = np.array([j for _, j in data.pairs])
        vertices = data.vertex_matrix[rows]
        facets = data.facet_matrix[cols]

        def polyhedral(matrix: np.ndarray) -> float:
            return float(np.max(np.abs(np.sum((vertices @ matrix.T) * facets, axis=1))))

        return polyhedral
    weights = hilbert_weights(space)
    if weights is None:
        return None

    def hilbert(matrix: np.ndarray) -> float:
        T = Operator(matrix=matrix, domain=space, codomain=space)
        return _hilbert_radius(T, weights)[0]

    return hilbert


def norm_evaluator(space: NormedSpace, options: SolverOptions | None = None) -> Callable[[np.ndarray], float] | None:
    """返回矩阵 ↦ ‖T‖ 的浮点函数；没有确定性快速路径时返回 None"""
    data = pair_data(space, options)
    if data is not None:
        vertices, facets = data.vertex_matrix, data.facet_matrix

        def polyhedral(matrix: np.ndarray) -> float:
            return float(np.max(np.abs(facets @ matrix @ vertices.T)))

        return polyhedral
    weights = hilbert_weights(space)
    if weights is None:
        return None
    root = np.sqrt(weights)

    def hilbert(matrix: np.ndarray) -> float:
        return float(np.linalg.norm((root[:, None] * matrix) / root[None, :], ord=2))

    return hilbert
