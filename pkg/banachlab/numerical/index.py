"""
数值指数 n(X) = inf{v(T) : ‖T‖ = 1}

- 精确：实多面体空间上 {T : v(T) ≤ 1} 是由关联对泛函 |f(Tv)| ≤ 1 围成的多面体，
  n(X) = 1 / max{‖T‖ : v(T) ≤ 1}，在该多面体的顶点上取到；泛函秩不足时 n(X) = 0。
- 估计：结构化候选（恒等、旋转、幂零、置换、张量/算子空间上的提升）、
  线性规划种子与随机多起点，最后对最优算子重新精确求值。
- 仅候选：顶点超出保护阈值的张量/算子空间只评估等距提升，给出带来源的上界。
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Callable

import numpy as np
from scipy.optimize import linprog

from ..exceptions import DimensionMismatchError, GuardrailExceededError, UnsupportedNormError
from ..geometry.norms import is_polyhedral
from ..geometry.polytope import exact_nullspace, exact_rank, vertices_from_facets
from ..geometry.scalars import dedupe_points, exact_identity, exact_zeros, is_exact, to_exact, to_float
from ..models import IndexCertificate, IndexMethod, NormedSpace, NormKind, NormResult, Operator, SolverOptions
from ..operators.core import kron, op_norm
from ..utils import from_params, make_rng, minimize_ratio, random_vectors, to_params
from .range import direct_radius, face_data, norm_evaluator, pair_data, radius_evaluator

LP_OPTIONS = {"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10}


def _operator(space: NormedSpace, matrix: np.ndarray, label: str = "") -> Operator:
    return Operator(matrix=matrix, domain=space, codomain=space, label=label)


def _scaled(matrix: np.ndarray, factor: Any) -> np.ndarray:
    if is_exact(matrix) and isinstance(factor, (Fraction, int)):
        return matrix * Fraction(factor)
    return to_float(matrix) * float(factor)


def witness_certificate(
    X: NormedSpace,
    T: Operator,
    options: SolverOptions | None = None,
    provenance: str = "",
    norm: NormResult | None = None,
) -> IndexCertificate:
    """
    单个算子给出的上界 n(X) ≤ v(T)/‖T‖

    norm 已知时（例如等距提升 ‖S⊗Id‖ = ‖S‖）直接使用，不再重新计算。

    Raises:
        DimensionMismatchError: T 不是 X 上的算子
        ValueError: T = 0
    """
    if not (T.domain.same_as(X) and T.codomain.same_as(X)):
        raise DimensionMismatchError(f"{T.label or '算子'} 不是 {X.label} 上的自同态")
    norm = norm or op_norm(T, options)
    if norm.value == 0:
        raise ValueError(f"{T.label or '算子'} 为零算子，无法给出数值指数上界")
    radius = direct_radius(T, options)
    value = radius.value / norm.value
    witness = _operator(X, _scaled(T.matrix, 1 / norm.value), label=T.label)
    return IndexCertificate(
        value=value,
        witness_operator=witness,
        witness_value=value,
        witness_states=[radius.witness] if radius.witness is not None else [],
        exact=False,
        certified=bool(radius.exact and norm.exact),
        method=IndexMethod.WITNESS_ONLY,
        provenance=provenance or f"v/‖·‖ via {radius.method}, {norm.method}",
    )


def index_upper_certificate(X: NormedSpace, T: Operator, options: SolverOptions | None = None) -> Any:
    """v(T)/‖T‖，T ≠ 0"""
    return witness_certificate(X, T, options).value


# ---------------------------------------------------------------------------
# 精确路径
# ---------------------------------------------------------------------------


def _radius_rows(X: NormedSpace, options: SolverOptions) -> list[tuple]:
    """关联对 (v, f) 给出的线性泛函 T ↦ f(Tv)，系数为 f_i v_j（按行展平），±去重"""
    data = pair_data(X, options)
    if data is None:
        raise GuardrailExceededError(f"{X.label}: 顶点或面无法在保护阈值内得到")
    rows = (
        tuple(f_i * v_j for f_i in data.facets[j] for v_j in data.vertices[i]) for i, j in data.pairs
    )
    return dedupe_points(rows, up_to_sign=True)


def numerical_index_exact(X: NormedSpace, options: SolverOptions | None = None) -> IndexCertificate:
    """
    实多面体空间的精确数值指数（有理数运算，零容差）

    Raises:
        UnsupportedNormError: 非实多面体空间
        GuardrailExceededError: dim² 超过 exact_index_dim
    """
    options = options or SolverOptions()
    if not is_polyhedral(X):
        raise UnsupportedNormError(f"{X.label}: 精确数值指数只支持实多面体空间")
    n = X.dim
    if n * n > options.exact_index_dim:
        raise GuardrailExceededError(f"{X.label}: dim² = {n * n} 超过精确路径阈值 {options.exact_index_dim}")

    rows = _radius_rows(X, options)
    if exact_rank(rows) < n * n:
        null = np.array(exact_nullspace(rows, n * n)[0], dtype=object).reshape(n, n)
        witness = _operator(X, null, label="null")
        norm = op_norm(witness, options)
        normalized = _operator(X, _scaled(null, 1 / norm.value), label="null")
        return IndexCertificate(
            value=Fraction(0),
            witness_operator=normalized,
            witness_value=Fraction(0),
            exact=True,
            certified=True,
            method=IndexMethod.POLYHEDRAL_ENUMERATION,
            provenance="关联对泛函秩不足：存在 v(T) = 0 的非零算子",
        )

    inequalities = list(rows) + [tuple(-c for c in row) for row in rows]
    vertices = vertices_from_facets(inequalities, guard=options.exact_index_dim)
    best_norm, best_matrix = None, None
    for vertex in vertices:
        matrix = np.array(vertex, dtype=object).reshape(n, n)
        norm = op_norm(_operator(X, matrix), options).value
        if best_norm is None or norm > best_norm:
            best_norm, best_matrix = norm, matrix
    value = Fraction(1) / best_norm
    witness = _operator(X, _scaled(best_matrix, value), label="extremal")
    radius = direct_radius(witness, options)
    return IndexCertificate(
        value=value,
        witness_operator=witness,
        witness_value=radius.value,
        witness_states=[radius.witness] if radius.witness is not None else [],
        exact=True,
        certified=True,
        method=IndexMethod.POLYHEDRAL_ENUMERATION,
        provenance=f"{{v ≤ 1}} 的 {len(vertices)} 个顶点上最大化 ‖T‖",
    )


# ---------------------------------------------------------------------------
# 估计路径
# ---------------------------------------------------------------------------


def _zero_matrix(space: NormedSpace) -> np.ndarray:
    if space.is_real:
        return exact_zeros((space.dim, space.dim))
    return np.zeros((space.dim, space.dim), dtype=np.complex128)


def _identity_matrix(space: NormedSpace) -> np.ndarray:
    return exact_identity(space.dim) if space.is_real else np.eye(space.dim, dtype=np.complex128)


def lifted_candidates(X: NormedSpace) -> list[tuple[str, np.ndarray, Operator]]:
    """
    张量/算子空间上由因子候选得到的等距提升 (名字, 矩阵, 因子算子)

    ‖S⊗Id‖ = ‖Id⊗S‖ = ‖S‖，‖Φ_J‖ = ‖J‖，‖Ψ_S‖ = ‖S‖，范数可以在因子上计算。
    """
    lifted = []
    if X.kind in (NormKind.TENSOR_PI, NormKind.TENSOR_EPS):
        left, right = X.left, X.right
        for name, matrix in structured_candidates(left):
            lifted.append((f"{name}⊗Id", kron(matrix, _identity_matrix(right)), _operator(left, matrix, name)))
        for name, matrix in structured_candidates(right):
            lifted.append((f"Id⊗{name}", kron(_identity_matrix(left), matrix), _operator(right, matrix, name)))
    elif X.kind == NormKind.OPERATOR_SPACE:
        domain, codomain = X.left, X.right
        for name, matrix in structured_candidates(domain):
            lifted.append(
                (f"Φ[{name}]", kron(_identity_matrix(codomain), np.array(matrix.T)), _operator(domain, matrix, name))
            )
        for name, matrix in structured_candidates(codomain):
            lifted.append((f"Ψ[{name}]", kron(matrix, _identity_matrix(domain)), _operator(codomain, matrix, name)))
    return lifted


def structured_candidates(X: NormedSpace) -> list[tuple[str, np.ndarray]]:
    """
    结构化候选算子：恒等、坐标平面旋转、幂零、置换、符号对角；
    张量空间加上因子候选的 Kronecker 提升，算子空间加上前/后复合
    """
    n = X.dim
    one = Fraction(1) if X.is_real else 1
    candidates = [("Id", _identity_matrix(X))]
    for i in range(n):
        for j in range(i + 1, n):
            rotation = _zero_matrix(X)
            rotation[i, j], rotation[j, i] = -one, one
            nilpotent = _zero_matrix(X)
            nilpotent[i, j] = one
            swap = _identity_matrix(X)
            swap[i, i], swap[j, j], swap[i, j], swap[j, i] = one - one, one - one, one, one
            candidates.extend([(f"rot{i}{j}", rotation), (f"nil{i}{j}", nilpotent), (f"swap{i}{j}", swap)])
    if n >= 2:
        signs = _identity_matrix(X)
        signs[n - 1, n - 1] = -one
        candidates.append(("diag-sign", signs))

    candidates.extend((name, matrix) for name, matrix, _ in lifted_candidates(X))
    return candidates


def _lp_seeds(X: NormedSpace, options: SolverOptions) -> tuple[list[np.ndarray], np.ndarray | None]:
    """
    对每个 (顶点 x, 面 g)，在 {T : |f(Tv)| ≤ 1} 上最大化 g(Tx)

    Returns:
        (最优算子列表, 可行域无界时的零半径方向)
    """
    data = pair_data(X, options)
    if data is None or len(data.vertices) * len(data.facets) > options.lp_seed_limit:
        return [], None
    n = X.dim
    rows = np.array(_radius_rows(X, options), dtype=object).astype(np.float64)
    if np.linalg.matrix_rank(rows) < n * n:
        _, _, vh = np.linalg.svd(rows)
        return [], vh[-1].reshape(n, n)
    constraints = np.vstack([rows, -rows])
    bounds = np.ones(len(constraints))
    seeds = []
    for x in data.vertex_matrix:
        for g in data.facet_matrix:
            result = linprog(
                -np.outer(g, x).reshape(-1),
                A_ub=constraints,
                b_ub=bounds,
                bounds=(None, None),
                method="highs",
                options=LP_OPTIONS,
            )
            if result.status == 0:
                seeds.append(result.x.reshape(n, n))
    return seeds, None


def _ratio_function(
    X: NormedSpace, options: SolverOptions
) -> Callable[[np.ndarray], float] | None:
    radius = radius_evaluator(X, options)
    norm = norm_evaluator(X, options)
    if radius is None or norm is None:
        return None

    def ratio(matrix: np.ndarray) -> float:
        scale = norm(matrix)
        if scale <= 1e-12:
            return math.inf
        return radius(matrix) / scale

    return ratio


def _finalize(
    X: NormedSpace,
    matrix: np.ndarray,
    options: SolverOptions,
    method: IndexMethod,
    provenance: str,
) -> IndexCertificate:
    """对最优算子重新求值；实多面体空间把浮点矩阵精确化后用有理数计算"""
    if X.is_real and not is_exact(matrix) and is_polyhedral(X):
        matrix = to_exact(np.real(matrix))
    certificate = witness_certificate(X, _operator(X, matrix, label="best"), options, provenance)
    return certificate.model_copy(update={"method": method})


def _witness_only(
    X: NormedSpace, candidates: list[tuple[str, np.ndarray]], options: SolverOptions
) -> IndexCertificate:
    """
    只评估候选的上界；实多面体空间顶点超出阈值时只取等距提升，
    范数在因子上算，数值半径逐个面解线性规划
    """
    lifted = lifted_candidates(X) if face_data(X, options) is not None else []
    best = None
    if lifted:
        for name, matrix, factor in lifted:
            norm = op_norm(factor, options)
            if norm.value == 0:
                continue
            certificate = witness_certificate(X, _operator(X, matrix, label=name), options, norm=norm)
            if best is None or certificate.value < best.value:
                best = certificate
        provenance = (
            f"仅候选：评估 {len(lifted)} 个等距提升候选，最优为 {best.witness_operator.label}；{best.provenance}"
        )
        return best.model_copy(update={"method": IndexMethod.WITNESS_ONLY, "provenance": provenance})

    for name, matrix in candidates:
        try:
            certificate = witness_certificate(X, _operator(X, matrix, label=name), options, f"候选 {name}")
        except ValueError:
            continue
        if best is None or certificate.value < best.value:
            best = certificate
    return best.model_copy(update={"method": IndexMethod.WITNESS_ONLY})


def numerical_index_estimate(
    X: NormedSpace,
    budget: int | None = None,
    options: SolverOptions | None = None,
) -> IndexCertificate:
    """
    数值指数的上界估计

    起点包括结构化候选、（实多面体空间）线性规划种子与 budget 个随机矩阵；
    评估值最小的 refine_top 个做 Nelder-Mead 局部优化。dim² 超过 estimate_dim
    时只评估结构化候选。

    Args:
        X: 赋范空间
        budget: 随机起点个数（覆盖 index_starts）
        options: 求解选项
    """
    options = (options or SolverOptions()).with_budget(budget)
    n = X.dim
    candidates = structured_candidates(X)

    ratio = _ratio_function(X, options)
    if n * n > options.estimate_dim or ratio is None:
        return _witness_only(X, candidates, options)

    seeds, null_direction = _lp_seeds(X, options) if is_polyhedral(X) else ([], None)
    if null_direction is not None:
        return _finalize(X, null_direction, options, IndexMethod.MULTISTART, "零半径方向")

    pool: list[tuple[float, str, np.ndarray]] = []
    for name, matrix in candidates:
        pool.append((ratio(to_float(matrix)), name, matrix))
    for k, matrix in enumerate(seeds):
        pool.append((ratio(matrix), f"lp{k}", matrix))

    complex_field = not X.is_real
    rng = make_rng(options.seed)
    randoms = random_vectors(n * n, options.index_starts, complex_field, rng)
    for k, flat in enumerate(randoms):
        matrix = flat.reshape(n, n)
        pool.append((ratio(matrix), f"random{k}", matrix))
    pool.sort(key=lambda item: item[0])

    def objective(params: np.ndarray) -> float:
        return ratio(from_params(params, n * n, complex_field).reshape(n, n))

    best_value, best_name, best_matrix = pool[0]
    starts = [to_params(to_float(matrix)) for _, _, matrix in pool[: options.refine_top]]
    params, value = minimize_ratio(objective, starts, options.index_iterations, options.refine_top)
    if value < best_value:
        best_value, best_name = value, "refined"
        best_matrix = from_params(params, n * n, complex_field).reshape(n, n)

    provenance = (
        f"{len(candidates)} 个结构化候选、{len(seeds)} 个线性规划种子、"
        f"{len(randoms)} 个随机起点；最优来自 {best_name}"
    )
    return _finalize(X, best_matrix, options, IndexMethod.MULTISTART, provenance)


def numerical_index(
    X: NormedSpace,
    budget: int | None = None,
    options: SolverOptions | None = None,
) -> IndexCertificate:
    """实多面体且 dim² 在精确阈值内时走精确路径，否则估计"""
    options = options or SolverOptions()
    if is_polyhedral(X) and X.dim * X.dim <= options.exact_index_dim:
        try:
            return numerical_index_exact(X, options)
        except GuardrailExceededError:
            pass
    return numerical_index_estimate(X, budget, options)
