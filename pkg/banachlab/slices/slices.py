"""
切片、凸包包含与确定族反例搜索

- 切片 Slice(A, x*, δ) = {x ∈ A : re x*(x) > sup re x*(A) − δ}
- A ⊆ conv(B) 的检验：对每个 a 求分离线性规划 max f(a) − max f(B)，‖f‖_1 ≤ 1，
  最优值即 a 到 conv(B) 的 ℓ_∞ 距离
- 确定族：与族中每个切片都相交的 B 必须满足 A ⊆ conv(B)；这里只搜索反例
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Any, Sequence

import numpy as np
from scipy.optimize import linprog

from ..exceptions import DimensionMismatchError, NotOnSphereError
from ..geometry.norms import (
    ball_vertices,
    dual_norm,
    dual_space,
    duality_map,
    eval_norm,
    is_polyhedral,
    norming_functionals,
    support_point,
)
from ..geometry.scalars import coerce_vector, is_exact, real_part, to_float
from ..geometry.spaces import sample_sphere
from ..models import (
    DeterminingVerdict,
    NormedSpace,
    Separation,
    SliceDaugavetReport,
    SliceSpec,
    SolverOptions,
    StronglyExposedReport,
)
from ..utils import make_rng

LP_OPTIONS = {"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10}

# 不超过该点数时穷举全部极小碰撞集
EXHAUSTIVE_LIMIT = 12

# 线性规划噪声以下的分离距离视为 0
SEPARATION_FLOOR = 1e-9


def _points_of(spec: SliceSpec) -> list[np.ndarray]:
    if spec.points is not None:
        points = [np.asarray(p) for p in spec.points]
    elif spec.ball is not None:
        points = [np.array(v, dtype=object) for v in ball_vertices(spec.ball)]
    else:
        points = []
    if not points:
        raise ValueError("切片的点集 A 为空")
    return points


def _re_pairing(f: np.ndarray, x: np.ndarray) -> Any:
    if is_exact(f) and is_exact(x):
        return sum((a * b for a, b in zip(f, x)), Fraction(0))
    return float(np.real(np.dot(to_float(f), to_float(x))))


def slice_indices(spec: SliceSpec) -> list[int]:
    """切片在 A 中的下标（按 A 的顺序）"""
    points = _points_of(spec)
    if spec.depth <= 0:
        raise ValueError(f"切片深度必须为正，当前为 {spec.depth}")
    functional = np.asarray(spec.functional)
    if any(len(p) != len(functional) for p in points):
        raise DimensionMismatchError("切片泛函与点集维数不符")
    values = [real_part(_re_pairing(functional, p)) for p in points]
    top = max(values)
    return [i for i, value in enumerate(values) if value > top - spec.depth]


def slice(spec: SliceSpec) -> list[np.ndarray]:
    """
    实现切片定义的 A 的子列表；最大点总在其中

    Raises:
        ValueError: A 为空或 δ ≤ 0
    """
    points = _points_of(spec)
    return [points[i] for i in slice_indices(spec)]


# ---------------------------------------------------------------------------
# 凸包包含
# ---------------------------------------------------------------------------


def _realify(points: Sequence[np.ndarray]) -> np.ndarray:
    """复坐标按 (实部, 虚部) 展开成实坐标"""
    array = np.array([to_float(p) for p in points])
    if np.iscomplexobj(array):
        return np.hstack([array.real, array.imag])
    return np.asarray(array, dtype=np.float64)


def separation_margin(a: np.ndarray, B: np.ndarray) -> tuple[float, np.ndarray]:
    """
    max{f(a) − max f(B) : ‖f‖_1 ≤ 1}

    变量 (f⁺, f⁻, s)，f = f⁺ − f⁻，约束 f(b) ≤ s。

    Returns:
        (margin, f)；margin 在返回的 f 上重新求值
    """
    dim = len(a)
    cost = np.concatenate([-a, a, [1.0]])
    rows = np.hstack([B, -B, -np.ones((len(B), 1))])
    budget = np.concatenate([np.ones(2 * dim), [0.0]])[None, :]
    result = linprog(
        cost,
        A_ub=np.vstack([rows, budget]),
        b_ub=np.concatenate([np.zeros(len(B)), [1.0]]),
        bounds=[(0, None)] * (2 * dim) + [(None, None)],
        method="highs",
        options=LP_OPTIONS,
    )
    if result.status != 0:
        raise RuntimeError(f"分离线性规划求解失败: {result.message}")
    f = result.x[:dim] - result.x[dim:2 * dim]
    return float(f @ a - np.max(B @ f)), f


def contains_in_conv(A: Sequence[Any], B: Sequence[Any], eta: float = 1e-9) -> Separation:
    """
    A 的每个点是否都在 conv(B) 的 η 邻域内（ℓ_∞ 距离）

    失败时返回分离距离最大的点及其分离泛函，margin > η。

    Raises:
        ValueError: B 为空
        DimensionMismatchError: 维数不一致
    """
    if len(B) == 0:
        raise ValueError("点集 B 为空")
    dims = {len(p) for p in list(A) + list(B)}
    if len(dims) != 1:
        raise DimensionMismatchError(f"点集维数不一致: {sorted(dims)}")
    a_real = _realify(A) if len(A) else np.zeros((0, 0))
    b_real = _realify(B)

    threshold = max(eta, SEPARATION_FLOOR)
    worst: Separation | None = None
    for index, a in enumerate(a_real):
        margin, f = separation_margin(a, b_real)
        if margin > threshold and (worst is None or margin > worst.margin):
            worst = Separation(contained=False, point=np.asarray(A[index]), functional=f, margin=margin)
    return worst or Separation(contained=True)


# ---------------------------------------------------------------------------
# 确定族反例搜索
# ---------------------------------------------------------------------------


def _locate(A: list[np.ndarray], spec: SliceSpec) -> set[int]:
    """把切片中的点对应回 A 的下标"""
    members: set[int] = set()
    for point in slice(spec):
        matches = [i for i, a in enumerate(A) if np.allclose(to_float(a), to_float(point))]
        if not matches:
            raise ValueError("切片中的点不在 A 中")
        members.update(matches)
    return members


def _minimal_hitting_sets(size: int, slices: list[set[int]]):
    """按基数递增枚举极小碰撞集"""
    found: list[frozenset[int]] = []
    for k in range(1, size + 1):
        for subset in itertools.combinations(range(size), k):
            chosen = frozenset(subset)
            if any(previous <= chosen for previous in found):
                continue
            if all(chosen & members for members in slices):
                found.append(chosen)
                yield chosen


def _greedy_hitting_set(size: int, slices: list[set[int]], rng: np.random.Generator) -> frozenset[int]:
    """随机顺序选点，再随机顺序删去多余的点"""
    chosen: set[int] = set()
    for k in rng.permutation(len(slices)):
        members = slices[int(k)]
        if not chosen & members:
            chosen.add(int(rng.choice(sorted(members))))
    for i in rng.permutation(sorted(chosen)):
        smaller = chosen - {int(i)}
        if smaller and all(smaller & members for members in slices):
            chosen = smaller
    return frozenset(chosen)


def determining_falsifier(
    A: Sequence[Any],
    family: list[SliceSpec],
    eta: float = 1e-6,
    budget: int = 256,
    seed: int | None = None,
) -> DeterminingVerdict:
    """
    搜索与每个切片都相交、但 A ⊄ conv(B) 的 B ⊆ A

    |A| ≤ 12 时穷举全部极小碰撞集（任何失败的碰撞集都包含一个失败的极小碰撞集）；
    否则做 budget 次随机贪心。找不到反例只说明在该分辨率下没有反例。

    Raises:
        ValueError: A 为空、切片为空或切片点不在 A 中
    """
    points = [np.asarray(a) for a in A]
    if not points:
        raise ValueError("点集 A 为空")
    if not family:
        raise ValueError("切片族为空")
    slices = []
    for spec in family:
        members = _locate(points, spec)
        if not members:
            raise ValueError("族中存在空切片")
        slices.append(members)

    seed = SolverOptions().seed if seed is None else seed
    exhaustive = len(points) <= EXHAUSTIVE_LIMIT
    if exhaustive:
        candidates = _minimal_hitting_sets(len(points), slices)
    else:
        rng = make_rng(seed)
        candidates = (_greedy_hitting_set(len(points), slices, rng) for _ in range(budget))

    tested: set[frozenset[int]] = set()
    resolution = {"eta": eta, "budget": budget, "seed": hex(seed), "search": "exhaustive" if exhaustive else "greedy"}
    for chosen in candidates:
        if chosen in tested:
            continue
        tested.add(chosen)
        B = [points[i] for i in sorted(chosen)]
        separation = contains_in_conv(points, B, eta)
        if not separation.contained:
            resolution["tested"] = len(tested)
            return DeterminingVerdict(family=family, counterexample=B, separation=separation, resolution=resolution)
    resolution["tested"] = len(tested)
    return DeterminingVerdict(family=family, resolution=resolution)


# ---------------------------------------------------------------------------
# 强暴露与切片版 Daugavet 检验
# ---------------------------------------------------------------------------


def strongly_exposed_check(
    space: NormedSpace,
    y0: Any,
    delta: float,
    epsilon: float,
    n_samples: int = 64,
    options: SolverOptions | None = None,
) -> StronglyExposedReport:
    """
    检验 y0 是否在给定 (δ, ε) 下强暴露其对偶映射 y0*

    样本为对偶球面上的随机点与 y0 的 δ-范数泛函；满足 re y*(y0) > 1 − δ 的样本中
    取 ‖y0* − y*‖ 的最大值与 ε 比较。

    Raises:
        NotOnSphereError: ‖y0‖ ≠ 1
    """
    options = options or SolverOptions()
    y0 = coerce_vector(space, y0)
    exposing = duality_map(space, y0, options)
    dual = dual_space(space)
    samples = [f.coefficients for f in norming_functionals(space, y0, delta, n_samples, options)]
    samples += sample_sphere(dual, n_samples, options=options)

    worst, worst_point, admissible = 0.0, None, 0
    for y_star in samples:
        if float(np.real(np.dot(to_float(y_star), to_float(y0)))) <= 1 - delta:
            continue
        admissible += 1
        distance = float(dual_norm(space, to_float(exposing) - to_float(y_star), options))
        if distance > worst:
            worst, worst_point = distance, y_star
    holds = worst < epsilon
    return StronglyExposedReport(
        exposing_functional=exposing,
        holds=holds,
        worst_distance=worst,
        admissible_samples=admissible,
        counterexample=None if holds else worst_point,
    )


def _slice_candidates_polyhedral(
    space: NormedSpace, functional: np.ndarray, epsilon: Any, options: SolverOptions
) -> list[np.ndarray]:
    """
    闭切片 B_X ∩ {re x*(y) ≥ 1 − ε} 的全部顶点都在候选中：
    切片内的球顶点，以及顶点连线与超平面 x*(y) = 1 − ε 的交点
    """
    vertices = [np.array(v, dtype=object) for v in ball_vertices(space, options)]
    level = 1 - epsilon
    values = [_re_pairing(functional, v) for v in vertices]
    inside = [v for v, value in zip(vertices, values) if value >= level]
    crossings = []
    for (u, a), (w, b) in itertools.combinations(zip(vertices, values), 2):
        if (a - level) * (b - level) < 0:
            t = (a - level) / (a - b)
            crossings.append(u + (w - u) * t)
    return inside + crossings


def daugavet_slice_test(
    space: NormedSpace,
    x: Any,
    x_star: Any,
    epsilon: Any,
    options: SolverOptions | None = None,
) -> SliceDaugavetReport:
    """
    sup{‖x + y‖ : y ∈ Slice(B_X, x*, ε)} 与 2 − ε 比较

    实多面体空间在闭切片的顶点上精确求值；其他空间在支撑点与随机样本上取最大值（下界）。

    Raises:
        NotOnSphereError: x 或 x* 不在单位球面上
    """
    options = options or SolverOptions()
    x = coerce_vector(space, x)
    functional = coerce_vector(space, x_star)
    for vector, target, what in ((x, space, "x"), (functional, dual_space(space), "x*")):
        norm = float(eval_norm(target, vector, options))
        if abs(norm - 1) > options.opt_tol:
            raise NotOnSphereError(f"{space.label}: {what} 不在单位球面上，范数为 {norm:.6g}")

    exact = is_polyhedral(space) and is_exact(x) and is_exact(functional) and isinstance(epsilon, (Fraction, int))
    if is_polyhedral(space):
        candidates = _slice_candidates_polyhedral(
            space, functional if exact else to_float(functional), epsilon if exact else float(epsilon), options
        )
    else:
        top, _ = support_point(space, functional, options)
        candidates = [top]
        for y in sample_sphere(space, options.starts, options=options):
            if float(np.real(np.dot(to_float(functional), y))) > 1 - float(epsilon):
                candidates.append(y)

    best_value, best_point = None, None
    for y in candidates:
        value = eval_norm(space, (x + y) if exact else to_float(x) + to_float(y), options)
        if best_value is None or value > best_value:
            best_value, best_point = value, y
    threshold = 2 - epsilon
    tol = options.exact_tol if exact else options.opt_tol
    return SliceDaugavetReport(
        best_value=float(best_value),
        threshold=float(threshold),
        holds=float(best_value) >= float(threshold) - tol,
        best_point=best_point,
        exact=exact,
    )
