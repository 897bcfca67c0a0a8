"""
张量范数：内射 ε 范数、射影 π 范数、张量空间、Kronecker 提升与核范数

X⊗Y 的元素用 dim(X)×dim(Y) 系数矩阵表示，Σ_ij u_ij e_i⊗e_j。
π 范数用全修正的列生成求解：主问题是原子上的线性规划（分解 = 上界），
对偶变量是 (X⊗_πY)* = L(X,Y*) 中的泛函，定价子问题是对偶因子上的 ε 范数。
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

import numpy as np
from scipy.optimize import linprog

from ..exceptions import DimensionMismatchError, GuardrailExceededError, UnsupportedNormError
from ..geometry.norms import (
    dual_norm,
    dual_space,
    duality_map,
    euclidean_pair,
    eval_norm,
    norm_is_certified,
    phase,
    try_facets,
    try_vertices,
)
from ..geometry.scalars import is_exact, to_float
from ..models import (
    NormedSpace,
    NormKind,
    Operator,
    PiNormResult,
    RankOneTerm,
    SolverOptions,
    TensorElement,
    TensorNormResult,
)
from ..operators.core import kron
from ..utils import make_rng, random_vectors

LP_OPTIONS = {"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10}

# 列生成的最大轮数
MAX_ROUNDS = 300
# 交替最大化的单次迭代上限
ALTERNATING_STEPS = 200


def elementary_tensor(x: Any, y: Any, left: NormedSpace, right: NormedSpace) -> TensorElement:
    x = np.asarray(x)
    y = np.asarray(y)
    if is_exact(x) and is_exact(y):
        coefficients = np.array([[a * b for b in y] for a in x], dtype=object)
    else:
        coefficients = np.outer(to_float(x), to_float(y))
    return TensorElement(coefficients=coefficients, left=left, right=right)


def _bilinear(coefficients: np.ndarray, a: np.ndarray, b: np.ndarray) -> Any:
    """Σ u_ij a_i b_j"""
    if is_exact(coefficients) and is_exact(a) and is_exact(b):
        return a.dot(coefficients.dot(b))
    return to_float(a) @ to_float(coefficients) @ to_float(b)


def _is_zero(array: np.ndarray) -> bool:
    return not np.any(to_float(array) != 0)


# ---------------------------------------------------------------------------
# ε 范数
# ---------------------------------------------------------------------------


def _unit_functional(space: NormedSpace) -> np.ndarray:
    f = np.zeros(space.dim, dtype=space.dtype)
    f[0] = 1
    return f / float(dual_norm(space, f))


def eps_norm(u: TensorElement, options: SolverOptions | None = None) -> TensorNormResult:
    """
    ‖u‖_ε = sup{|Σ u_ij x*_i y*_j| : x* ∈ B_{X*}, y* ∈ B_{Y*}}

    路径：欧氏对取最大奇异值；X 或 Y 为多面体时枚举其对偶球顶点（即面泛函），
    对另一个因子求范数；否则多起点交替最大化（启发式）。
    """
    options = options or SolverOptions()
    A = u.coefficients
    X, Y = u.left, u.right
    if _is_zero(A):
        return TensorNormResult(
            value=Fraction(0) if is_exact(A) else 0.0,
            left_functional=_unit_functional(X),
            right_functional=_unit_functional(Y),
            exact=True,
            method="zero",
        )

    if euclidean_pair(X, Y):
        U, singular, vh = np.linalg.svd(to_float(A))
        a, b = np.conj(U[:, 0]), np.conj(vh[0])
        if X.is_real:
            a, b = np.real(a), np.real(b)
        return TensorNormResult(
            value=float(singular[0]), left_functional=a, right_functional=b, exact=True, method="singular-values"
        )

    facets = try_facets(X, options)
    if facets is not None:
        return _eps_over_facets(A, X, Y, facets, options, transpose=False)
    facets = try_facets(Y, options)
    if facets is not None:
        return _eps_over_facets(A, X, Y, facets, options, transpose=True)
    return _eps_alternating(A, X, Y, options)


def _eps_over_facets(
    A: np.ndarray,
    X: NormedSpace,
    Y: NormedSpace,
    facets: list,
    options: SolverOptions,
    transpose: bool,
) -> TensorNormResult:
    """固定一侧取面泛函 f，另一侧的上确界是 ‖fᵀA‖（或 ‖A g‖）"""
    other = X if transpose else Y
    matrix = A if transpose else A.T
    best_value, best_facet, best_image = None, None, None
    for facet in facets:
        f = np.array(facet, dtype=object)
        image = matrix.dot(f) if is_exact(matrix) else to_float(matrix) @ to_float(f)
        value = eval_norm(other, image, options)
        if best_value is None or value > best_value:
            best_value, best_facet, best_image = value, f, image
    facet = best_facet if is_exact(A) else to_float(best_facet)
    if _is_zero(best_image):
        partner = _unit_functional(other)
    else:
        partner = duality_map(other, best_image, options)
    left, right = (partner, facet) if transpose else (facet, partner)
    return TensorNormResult(
        value=best_value,
        left_functional=left,
        right_functional=right,
        exact=norm_is_certified(other, options),
        method="dual-vertices",
    )


def _eps_alternating(A: np.ndarray, X: NormedSpace, Y: NormedSpace, options: SolverOptions) -> TensorNormResult:
    matrix = to_float(A)
    complex_field = not X.is_real
    rng = make_rng(options.seed)
    best_value, best_pair = -1.0, None
    for w in random_vectors(Y.dim, options.starts, complex_field, rng):
        b = w / float(dual_norm(Y, w, options))
        previous = -1.0
        a = None
        for _ in range(ALTERNATING_STEPS):
            z = matrix @ b
            if not np.any(z != 0):
                break
            a = duality_map(X, z, options)
            w = matrix.T @ a
            if not np.any(w != 0):
                break
            b = duality_map(Y, w, options)
            value = float(eval_norm(Y, w, options))
            if value - previous < 1e-14:
                break
            previous = value
        if a is None:
            continue
        value = float(abs(a @ matrix @ b))
        if value > best_value:
            best_value, best_pair = value, (a, b)
    if best_pair is None:
        raise UnsupportedNormError(f"{X.label}⊗{Y.label}: 交替最大化未找到可行起点")
    return TensorNormResult(
        value=best_value,
        left_functional=best_pair[0],
        right_functional=best_pair[1],
        exact=False,
        method="alternating",
    )


# ---------------------------------------------------------------------------
# π 范数
# ---------------------------------------------------------------------------


def _pi_singular(A: np.ndarray, X: NormedSpace) -> PiNormResult:
    U, singular, vh = np.linalg.svd(to_float(A), full_matrices=False)
    rank = int(np.sum(singular > 1e-14 * max(singular[0], 1e-300)))
    terms = [
        RankOneTerm(coefficient=float(singular[k]), left=U[:, k], right=vh[k]) for k in range(rank)
    ]
    certificate = np.conj(U[:, :rank] @ vh[:rank])
    if X.is_real:
        certificate = np.real(certificate)
    value = float(np.sum(singular))
    return PiNormResult(
        value=value,
        upper=value,
        lower=value,
        decomposition=terms,
        dual_certificate=certificate,
        exact=True,
        method="singular-values",
    )


def _initial_atoms(X: NormedSpace, Y: NormedSpace, options: SolverOptions) -> list[tuple[np.ndarray, np.ndarray]]:
    """初始原子：两侧都是多面体时取全部顶点积，否则取带相位的单位坐标向量积"""
    left_vertices = try_vertices(X, options)
    right_vertices = try_vertices(Y, options)
    if (
        left_vertices is not None
        and right_vertices is not None
        and len(left_vertices) * len(right_vertices) <= options.atom_limit
    ):
        return [
            (np.array(v, dtype=float), np.array(w, dtype=float))
            for v in left_vertices
            for w in right_vertices
        ]

    phases: tuple[complex, ...] = (1, -1) if X.is_real else (1, -1, 1j, -1j)
    atoms = []
    for i in range(X.dim):
        x = np.zeros(X.dim, dtype=X.dtype)
        x[i] = 1
        x = x / float(eval_norm(X, x, options))
        for j in range(Y.dim):
            y = np.zeros(Y.dim, dtype=Y.dtype)
            y[j] = 1
            y = y / float(eval_norm(Y, y, options))
            for c in phases:
                atoms.append((c * x, y))
    return atoms


def _realify(array: np.ndarray, complex_field: bool) -> np.ndarray:
    flat = np.asarray(array).reshape(-1)
    if complex_field:
        return np.concatenate([flat.real, flat.imag])
    return np.real(flat)


def pi_norm(u: TensorElement, options: SolverOptions | None = None) -> PiNormResult:
    """
    ‖u‖_π = inf{Σ ‖x_k‖‖y_k‖ : u = Σ x_k⊗y_k}

    返回上界（分解）、下界（对偶证书 D，‖D‖_ε ≤ 1 于 X*⊗Y*）以及二者之差；
    差距不超过 opt_tol 且定价子问题走精确路径时 exact = True。
    """
    options = options or SolverOptions()
    A = u.coefficients
    X, Y = u.left, u.right
    if _is_zero(A):
        zero = Fraction(0) if is_exact(A) else 0.0
        return PiNormResult(
            value=zero,
            upper=zero,
            lower=zero,
            dual_certificate=np.zeros(A.shape, dtype=X.dtype),
            exact=True,
            method="zero",
        )
    if euclidean_pair(X, Y):
        return _pi_singular(A, X)

    complex_field = not X.is_real
    target = _realify(to_float(A), complex_field)
    dual_left, dual_right = dual_space(X), dual_space(Y)
    atoms = _initial_atoms(X, Y, options)
    seen = {np.round(_realify(np.outer(x, y), complex_field), 12).tobytes() for x, y in atoms}

    primal, lower, certificate, pricing_exact = None, 0.0, None, False
    weights = np.zeros(0)
    for _ in range(MAX_ROUNDS):
        columns = np.column_stack([_realify(np.outer(x, y), complex_field) for x, y in atoms])
        result = linprog(
            np.ones(len(atoms)),
            A_eq=columns,
            b_eq=target,
            bounds=(0, None),
            method="highs",
            options=LP_OPTIONS,
        )
        if result.status != 0:
            raise UnsupportedNormError(f"{X.label}⊗{Y.label}: 原子线性规划求解失败（{result.message}）")
        primal = float(result.fun)
        weights = result.x
        multipliers = result.eqlin.marginals
        size = A.size
        if complex_field:
            dual = (multipliers[:size] - 1j * multipliers[size:]).reshape(A.shape)
        else:
            dual = multipliers.reshape(A.shape)

        pricing = eps_norm(TensorElement(coefficients=dual, left=dual_left, right=dual_right), options)
        bound = float(pricing.value)
        pricing_exact = pricing.exact
        scale = max(bound, 1.0)
        if primal / scale > lower:
            lower = primal / scale
            certificate = dual / scale
        if bound <= 1 + options.opt_tol:
            break

        x = pricing.left_functional
        y = pricing.right_functional
        x = x * phase(np.array([_bilinear(dual, x, y)]))[0]
        key = np.round(_realify(np.outer(x, y), complex_field), 12).tobytes()
        if key in seen:
            break
        seen.add(key)
        atoms.append((to_float(x), to_float(y)))

    terms = [
        RankOneTerm(coefficient=float(weights[k]), left=atoms[k][0], right=atoms[k][1])
        for k in range(len(atoms))
        if weights[k] > 1e-12
    ]
    exact = pricing_exact and primal - lower <= options.opt_tol
    return PiNormResult(
        value=primal,
        upper=primal,
        lower=lower,
        decomposition=terms,
        dual_certificate=certificate,
        exact=exact,
        method="column-generation",
    )


# ---------------------------------------------------------------------------
# 张量空间与提升
# ---------------------------------------------------------------------------


def _tensor_kind(kind: Any) -> NormKind:
    if isinstance(kind, NormKind):
        if kind not in (NormKind.TENSOR_PI, NormKind.TENSOR_EPS):
            raise ValueError(f"不是张量范数类型: {kind.value}")
        return kind
    text = str(kind).lower()
    if text in ("pi", "π", "projective", "tensor-pi"):
        return NormKind.TENSOR_PI
    if text in ("eps", "epsilon", "ε", "injective", "tensor-eps"):
        return NormKind.TENSOR_EPS
    raise ValueError(f"未知的张量范数类型: {kind!r}")


def tensor_space(
    X: NormedSpace,
    Y: NormedSpace,
    kind: Any = "pi",
    options: SolverOptions | None = None,
) -> NormedSpace:
    """
    X⊗_πY 或 X⊗_εY

    Raises:
        GuardrailExceededError: dim(X)·dim(Y) 超过 tensor_dim
    """
    options = options or SolverOptions()
    norm_kind = _tensor_kind(kind)
    dim = X.dim * Y.dim
    if dim > options.tensor_dim:
        raise GuardrailExceededError(f"{X.label}⊗{Y.label} 的维数 {dim} 超过保护阈值 {options.tensor_dim}")
    if X.field != Y.field:
        raise DimensionMismatchError(f"{X.label} 与 {Y.label} 的标量域不同")
    symbol = "π" if norm_kind == NormKind.TENSOR_PI else "ε"
    return NormedSpace(
        label=f"{X.label}⊗{symbol}{Y.label}",
        dim=dim,
        field=X.field,
        kind=norm_kind,
        left=X,
        right=Y,
    )


def tensor_lift(S: Operator, T: Operator, kind: Any = "pi", options: SolverOptions | None = None) -> Operator:
    """S⊗T：(S⊗T)(x⊗y) = Sx⊗Ty，矩阵为 Kronecker 积"""
    domain = tensor_space(S.domain, T.domain, kind, options)
    codomain = tensor_space(S.codomain, T.codomain, kind, options)
    label = f"{S.label}⊗{T.label}" if S.label and T.label else ""
    return Operator(matrix=kron(S.matrix, T.matrix), domain=domain, codomain=codomain, label=label)


def nuclear_norm_operator(T: Operator, options: SolverOptions | None = None) -> PiNormResult:
    """核范数 N(T) = ‖T‖_{X*⊗_πY}；T = Σ x*_k⊗y_k 对应系数矩阵 Tᵀ"""
    element = TensorElement(coefficients=np.array(T.matrix.T), left=dual_space(T.domain), right=T.codomain)
    return pi_norm(element, options)
