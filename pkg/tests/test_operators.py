"""
算子测试：算子范数、复合、伴随与算子空间
"""
import math
from fractions import Fraction

import numpy as np
import pytest

from banachlab.exceptions import DimensionMismatchError, GuardrailExceededError
from banachlab.geometry import as_vector, ball_facets, eval_norm, lp_space
from banachlab.models import SolverOptions
from banachlab.operators import (
    adjoint,
    as_space_vector,
    compose,
    from_space_vector,
    identity,
    make_operator,
    op_norm,
    operator_space,
    rank_one,
)

L12 = lp_space(2, 1, label="l12")
LINF2 = lp_space(2, "inf", label="linf2")
L22 = lp_space(2, 2, label="l22")


def test_identity_norm():
    for space in (L12, LINF2, L22):
        result = op_norm(identity(space))
        assert float(result.value) == pytest.approx(1.0)
        assert result.exact


def test_swap_on_linf_is_isometry():
    swap = make_operator([[0, 1], [1, 0]], LINF2)
    result = op_norm(swap)
    assert result.value == Fraction(1)
    assert result.exact


def test_column_norm_on_l1():
    """ℓ_1^2 上的范数是列 ℓ_1 范数的最大值"""
    T = make_operator([[1, 1], [1, -1]], L12)
    result = op_norm(T)
    assert result.value == Fraction(2)
    assert eval_norm(L12, T.apply(result.witness)) == Fraction(2)


def test_codomain_facets_path():
    """ℓ_2^2 → ℓ_1^2 的恒等映射范数为 √2"""
    T = make_operator([[1, 0], [0, 1]], L22, L12)
    result = op_norm(T)
    assert float(result.value) == pytest.approx(math.sqrt(2))
    assert result.exact


def test_multistart_path_is_heuristic():
    l3 = lp_space(2, 3, label="l3")
    result = op_norm(identity(l3), SolverOptions(starts=8, iterations=200, refine_top=2))
    assert result.value == pytest.approx(1.0, abs=1e-8)
    assert not result.exact


def test_compose_with_identity():
    A = make_operator([[1, 2], [3, 4]], L12)
    assert np.array_equal(compose(A, identity(L12)).matrix, A.matrix)


def test_swap_squared_is_identity():
    swap = make_operator([[0, 1], [1, 0]], LINF2)
    assert np.array_equal(compose(swap, swap).matrix, identity(LINF2).matrix)


def test_rank_one_composition():
    """(x*⊗y)∘J = (J*x*)⊗y"""
    x_star = as_vector([1, -2])
    y = as_vector([3, "1/2"])
    J = make_operator([[1, 1], [0, 2]], L12)
    left = compose(rank_one(x_star, y, L12, L12), J)
    right = rank_one(J.matrix.T.dot(x_star), y, L12, L12)
    assert np.array_equal(left.matrix, right.matrix)


def test_compose_rejects_mismatched_spaces():
    with pytest.raises(DimensionMismatchError):
        compose(identity(L12), identity(LINF2))


def test_adjoint():
    assert np.array_equal(adjoint(identity(L12)).matrix, identity(L12).matrix)
    T = make_operator([[1, 1], [1, -1]], L12)
    T_star = adjoint(T)
    assert T_star.domain.same_as(LINF2)
    assert op_norm(T_star).value == Fraction(2)


def test_adjoint_reverses_composition():
    A = make_operator([[1, 2], [0, 1]], L12, LINF2)
    B = make_operator([[1, 0], [1, 1]], L12)
    left = adjoint(compose(A, B))
    right = compose(adjoint(B), adjoint(A))
    assert np.array_equal(left.matrix, right.matrix)


def test_one_dimensional_operator_space():
    l11 = lp_space(1, 1)
    Z = operator_space(l11, l11)
    assert Z.dim == 1
    assert eval_norm(Z, as_vector([-3])) == Fraction(3)


def test_operator_space_identity_norm():
    Z = operator_space(LINF2, LINF2)
    assert eval_norm(Z, as_space_vector(identity(LINF2))) == Fraction(1)


def test_operator_space_l1_to_linf_is_cube():
    """L(ℓ_1^2, ℓ_∞^2) 的单位球是 ℓ_∞^4 立方体"""
    Z = operator_space(L12, LINF2)
    expected = set()
    for i in range(4):
        for sign in (1, -1):
            expected.add(tuple(Fraction(sign if j == i else 0) for j in range(4)))
    assert set(ball_facets(Z)) == expected


def test_space_vector_roundtrip():
    Z = operator_space(L12, LINF2)
    T = make_operator([[1, 2], [3, 4]], L12, LINF2)
    back = from_space_vector(Z, as_space_vector(T))
    assert np.array_equal(back.matrix, T.matrix)


def test_operator_space_guardrail():
    with pytest.raises(GuardrailExceededError):
        operator_space(lp_space(3, 1), lp_space(3, 1), SolverOptions(operator_space_dim=8))
