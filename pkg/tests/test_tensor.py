"""
张量范数测试：ε/π 范数、块公式、张量空间、提升与核范数
"""
from fractions import Fraction

import numpy as np
import pytest

from banachlab.exceptions import GuardrailExceededError
from banachlab.geometry import as_vector, ball_facets, ball_vertices, dual_norm, eval_norm, lp_space
from banachlab.models import NormKind, SolverOptions, TensorElement
from banachlab.operators import identity, make_operator, op_norm, rank_one
from banachlab.tensor import (
    elementary_tensor,
    eps_norm,
    nuclear_norm_operator,
    pi_norm,
    tensor_lift,
    tensor_space,
)
from banachlab.utils import make_rng

L12 = lp_space(2, 1, label="l12")
LINF2 = lp_space(2, "inf", label="linf2")
L22 = lp_space(2, 2, label="l22")
L32 = lp_space(2, 3, label="l3")


def _signed_basis(dim):
    return {tuple(Fraction(s if j == i else 0) for j in range(dim)) for i in range(dim) for s in (1, -1)}


def test_rank_one_cross_norm():
    x, y = as_vector([1, 2]), as_vector([3, -1])
    u = elementary_tensor(x, y, L12, LINF2)
    expected = float(eval_norm(L12, x)) * float(eval_norm(LINF2, y))
    assert float(eps_norm(u).value) == pytest.approx(expected, abs=1e-9)
    assert float(pi_norm(u).value) == pytest.approx(expected, abs=1e-9)


def test_identity_array_euclidean():
    u = TensorElement(coefficients=np.eye(2), left=L22, right=L22)
    assert eps_norm(u).value == pytest.approx(1.0)
    result = pi_norm(u)
    assert result.value == pytest.approx(2.0)
    assert result.exact


def test_identity_array_linf():
    u = TensorElement(coefficients=as_vector([1, 0, 0, 1]).reshape(2, 2), left=LINF2, right=LINF2)
    result = eps_norm(u)
    assert result.value == 1
    assert result.exact


def test_l1_factor_block_formula():
    """e_1⊗y_1 + e_2⊗y_2 在 ℓ_1^2⊗_πY 中的范数为 ‖y_1‖ + ‖y_2‖"""
    rows = np.array([[1.0, 2.0], [-3.0, 0.5]])
    u = TensorElement(coefficients=rows, left=L12, right=L32)
    expected = sum(np.linalg.norm(row, ord=3) for row in rows)
    result = pi_norm(u)
    assert result.value == pytest.approx(expected, abs=1e-6)
    assert result.gap <= 1e-6


def test_linf_factor_block_formula():
    """X⊗_εℓ_∞^2 的范数为各列 X 范数的最大值"""
    rng = make_rng(0x5EED)
    for _ in range(5):
        A = rng.standard_normal((2, 2))
        u = TensorElement(coefficients=A, left=L32, right=LINF2)
        expected = max(np.linalg.norm(A[:, j], ord=3) for j in range(2))
        assert float(eps_norm(u).value) == pytest.approx(expected, abs=1e-9)


def test_eps_below_pi_on_random_tensors():
    rng = make_rng(0x5EED)
    for _ in range(100):
        u = TensorElement(coefficients=rng.standard_normal((2, 2)), left=L12, right=LINF2)
        eps = float(eps_norm(u).value)
        pi = pi_norm(u)
        assert eps <= float(pi.value) + 1e-9
        assert pi.gap <= 1e-6


@pytest.mark.parametrize("field", ["real", "complex"])
def test_euclidean_pair_is_trace_and_spectral_norm(field):
    """ℓ_2⊗ℓ_2：π 为奇异值之和（核范数），ε 为最大奇异值（算子范数）"""
    space = lp_space(3, 2, field=field)
    rng = make_rng(11)
    for _ in range(20):
        A = rng.standard_normal((3, 3))
        if field == "complex":
            A = A + 1j * rng.standard_normal((3, 3))
        singular = np.linalg.svd(A, compute_uv=False)
        u = TensorElement(coefficients=A, left=space, right=space)
        T = make_operator(A.T, space)
        pi = float(pi_norm(u).value)
        assert pi == pytest.approx(float(np.sum(singular)), abs=1e-6)
        assert float(nuclear_norm_operator(T).value) == pytest.approx(pi, abs=1e-6)
        eps = float(eps_norm(u).value)
        assert eps == pytest.approx(float(singular[0]), abs=1e-6)
        assert float(op_norm(T).value) == pytest.approx(eps, abs=1e-6)


def test_pi_decomposition_reproduces_tensor():
    u = TensorElement(coefficients=np.array([[1.0, -2.0], [0.5, 1.0]]), left=L12, right=LINF2)
    result = pi_norm(u)
    total = sum(term.coefficient * np.outer(term.left, term.right) for term in result.decomposition)
    np.testing.assert_allclose(total, u.coefficients, atol=1e-8)
    cost = sum(
        term.coefficient * float(eval_norm(L12, term.left)) * float(eval_norm(LINF2, term.right))
        for term in result.decomposition
    )
    assert cost == pytest.approx(result.upper, abs=1e-8)


def test_projective_l1_ball_is_cross_polytope():
    Z = tensor_space(L12, L12, "pi")
    assert Z.kind == NormKind.TENSOR_PI
    assert set(ball_vertices(Z)) == _signed_basis(4)


def test_injective_linf_ball_is_cube():
    Z = tensor_space(LINF2, LINF2, "eps")
    assert set(ball_facets(Z)) == _signed_basis(4)


def test_tensor_space_norm_matches_rank_one():
    x, y = as_vector([1, -1]), as_vector(["1/2", 2])
    Z = tensor_space(L12, LINF2, "pi")
    u = elementary_tensor(x, y, L12, LINF2)
    assert float(eval_norm(Z, u.flat())) == pytest.approx(4.0)


def test_tensor_space_guardrail():
    l13 = lp_space(3, 1)
    with pytest.raises(GuardrailExceededError):
        tensor_space(l13, l13, "pi", SolverOptions(tensor_dim=8))


def test_identity_lift():
    lifted = tensor_lift(identity(L12), identity(LINF2), "pi")
    assert np.array_equal(lifted.matrix, identity(lifted.domain).matrix)


def test_lift_on_elementary_tensors():
    rng = make_rng(7)
    S = make_operator(rng.standard_normal((2, 2)), L12)
    T = make_operator(rng.standard_normal((2, 2)), LINF2)
    lifted = tensor_lift(S, T, "eps")
    x, y = rng.standard_normal(2), rng.standard_normal(2)
    np.testing.assert_allclose(lifted.apply(np.kron(x, y)), np.kron(S.apply(x), T.apply(y)), atol=1e-12)


def test_projective_lift_keeps_norm():
    """‖S⊗_π Id‖ = ‖S‖"""
    rng = make_rng(0x5EED)
    for _ in range(3):
        S = make_operator(rng.standard_normal((2, 2)), LINF2)
        lifted = tensor_lift(S, identity(L12), "pi")
        assert float(op_norm(lifted).value) == pytest.approx(float(op_norm(S).value), abs=1e-9)


def test_nuclear_norms():
    assert nuclear_norm_operator(identity(L22)).value == pytest.approx(2.0)
    assert float(nuclear_norm_operator(identity(LINF2)).value) == pytest.approx(2.0, abs=1e-9)
    x_star, y = as_vector([1, 2]), as_vector([3, -1])
    T = rank_one(x_star, y, L12, L12)
    expected = float(dual_norm(L12, x_star)) * float(eval_norm(L12, y))
    assert float(nuclear_norm_operator(T).value) == pytest.approx(expected, abs=1e-9)
