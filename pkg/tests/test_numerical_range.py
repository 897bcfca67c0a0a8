"""
数值域测试：样本、v_δ、数值半径与 Daugavet 缺陷
"""
import math
from fractions import Fraction

import numpy as np
import pytest

from banachlab.config import default_catalog_path, parse_catalog
from banachlab.exceptions import NotEndomorphismError
from banachlab.geometry import lp_space
from banachlab.models import NormKind, SolverOptions
from banachlab.numerical import (
    daugavet_defect,
    direct_radius,
    numerical_radius,
    numerical_range_sample,
    sup_re_numerical_range,
    v_delta,
)
from banachlab.operators import identity, make_operator, op_norm, operator_space
from banachlab.utils import make_rng

L12 = lp_space(2, 1, label="l12")
LINF2 = lp_space(2, "inf", label="linf2")
LINF3 = lp_space(3, "inf", label="linf3")
L22 = lp_space(2, 2, label="l22")

FAST = SolverOptions(starts=8, iterations=200, refine_top=2)


def _rotation():
    return make_operator([[0, -1], [1, 0]], L22)


def test_identity_samples_equal_one():
    assert all(value == 1 for value in numerical_range_sample(identity(LINF2)))
    samples = numerical_range_sample(identity(L22), n_samples=16, options=FAST)
    assert samples == pytest.approx([1.0] * len(samples))


def test_rotation_samples_vanish():
    samples = numerical_range_sample(_rotation(), n_samples=16, options=FAST)
    assert max(abs(s) for s in samples) < 1e-12


def test_swap_samples_on_l1():
    """关联对 x = e_1, x* = (1, ±1) 给出 ±1"""
    samples = numerical_range_sample(make_operator([[0, 1], [1, 0]], L12))
    assert all(-1 <= s <= 1 for s in samples)
    assert Fraction(1) in samples and Fraction(-1) in samples


def test_v_delta_identity():
    for delta in (Fraction(1), Fraction(1, 16), Fraction(1, 1024)):
        assert v_delta(identity(LINF2), delta) == 1


def test_v_delta_rotation_hilbert():
    assert v_delta(_rotation(), 2, options=FAST) == pytest.approx(1.0)
    value = v_delta(_rotation(), 0.02, options=FAST)
    assert value <= math.sqrt(1 - 0.98**2) + 1e-9
    assert value == pytest.approx(0.1990, abs=1e-3)


def test_v_delta_finite_sets():
    swap = make_operator([[0, 1], [1, 0]], L12)
    A = [np.array([Fraction(1), Fraction(0)], dtype=object)]
    B = [np.array([Fraction(1), Fraction(1)], dtype=object)]
    assert v_delta(swap, Fraction(1, 2), A=A, B=B) == 1


def test_v_delta_rejects_nonpositive_delta():
    with pytest.raises(ValueError):
        v_delta(identity(LINF2), 0)


def test_numerical_radius_values():
    assert numerical_radius(identity(LINF2)).value == 1
    result = numerical_radius(make_operator([[0, 1], [1, 0]], L12))
    assert result.value == 1
    assert result.exact
    rotation = numerical_radius(_rotation(), FAST)
    assert rotation.value < 1e-6
    assert not rotation.exact


def test_polyhedral_schedule_reaches_radius():
    """多面体空间上 v_δ 序列单调不增，并在有限步内等于 v(T)"""
    T = make_operator([[1, "1/2", 0], [-2, 0, 1], ["1/3", 1, -1]], LINF3)
    result = numerical_radius(T)
    values = [value for _, value in result.delta_schedule]
    assert all(a >= b for a, b in zip(values, values[1:]))
    assert values[-1] == result.value
    assert direct_radius(T).value == result.value


def test_hilbert_schedule_monotone():
    T = make_operator([[1, 2], [0, -1]], L22)
    result = numerical_radius(T, FAST)
    values = [value for _, value in result.delta_schedule]
    assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))
    assert result.value == pytest.approx(direct_radius(T).value, abs=1e-5)


def test_radius_requires_endomorphism():
    T = make_operator([[1, 0], [0, 1]], L12, LINF2)
    with pytest.raises(NotEndomorphismError):
        numerical_radius(T)


def test_daugavet_identity():
    result = daugavet_defect(identity(LINF2))
    assert result.defect == 0
    assert result.sup_re_v == 1
    assert result.exact


def test_daugavet_minus_identity():
    result = daugavet_defect(make_operator([[-1, 0], [0, -1]], LINF2))
    assert result.defect == 2
    assert result.sup_re_v == -1
    assert result.norm == 1


def test_daugavet_diagonal_copy():
    """T(x) = (x_1, x_1)：‖Id+T‖ = 2 = 1+‖T‖"""
    result = daugavet_defect(make_operator([[1, 0], [1, 0]], LINF2))
    assert result.norm_id_plus == 2
    assert result.defect == 0
    assert result.sup_re_v == result.norm


CATALOG = parse_catalog(default_catalog_path())
ENDOMORPHISM_SPACES = [label for label, space in CATALOG.spaces.items() if space.kind != NormKind.OPERATOR_SPACE]


def _random_operator(space, rng):
    if space.is_real:
        return make_operator(rng.standard_normal((space.dim, space.dim)), space)
    shape = (space.dim, space.dim)
    return make_operator(rng.standard_normal(shape) + 1j * rng.standard_normal(shape), space)


@pytest.mark.parametrize("label", ENDOMORPHISM_SPACES)
def test_schedule_monotone_and_reaches_direct_radius(label):
    """50 个随机自同态：v_δ 序列单调不增，末值等于直接计算的 v(T)"""
    space = CATALOG.space(label)
    options = SolverOptions(starts=8, iterations=400, refine_top=2)
    rng = make_rng(101)
    for _ in range(50):
        T = _random_operator(space, rng)
        result = numerical_radius(T, options)
        values = [float(value) for _, value in result.delta_schedule]
        assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))
        assert values[-1] == pytest.approx(float(direct_radius(T, options).value), abs=1e-6)
        if result.exact:
            assert abs(values[-1] - float(result.value)) <= 1e-8


@pytest.mark.parametrize("label", ENDOMORPHISM_SPACES)
def test_daugavet_equation_iff_norm_in_numerical_range(label):
    """‖Id+T‖ = 1+‖T‖ 当且仅当 sup re V(T) = ‖T‖（100 个整数矩阵）"""
    space = CATALOG.space(label)
    rng = make_rng(202)
    for _ in range(100):
        rows = rng.integers(-3, 4, size=(space.dim, space.dim))
        rows = rows.tolist() if space.is_real else rows.astype(np.complex128)
        result = daugavet_defect(make_operator(rows, space), FAST)
        holds = float(result.defect) <= 1e-7
        attained = float(result.norm) - float(result.sup_re_v) <= 1e-7
        assert holds == attained


def test_facet_lp_radius_matches_incident_pairs():
    """顶点枚举被保护阈值挡住时，逐面线性规划给出同样的 v(T) 与 sup re V(T)"""
    Z = operator_space(lp_space(3, "inf"), lp_space(2, 1))
    T = make_operator(make_rng(7).standard_normal((Z.dim, Z.dim)), Z)
    narrow = SolverOptions(polytope_dim=4)

    by_faces = direct_radius(T, narrow)
    assert by_faces.method == "facet-lp"
    assert not by_faces.exact
    sup_faces, sup_exact = sup_re_numerical_range(T, narrow)
    assert not sup_exact

    by_pairs = direct_radius(T)
    assert by_pairs.method == "incident-pairs"
    assert by_faces.value == pytest.approx(float(by_pairs.value), abs=1e-7)
    assert sup_faces == pytest.approx(float(sup_re_numerical_range(T)[0]), abs=1e-7)


def test_v_delta_general_space_nilpotent():
    """ℓ_3^2 上 δ = 2 时 v_δ(T) = ‖T‖"""
    space = lp_space(2, 3)
    T = make_operator([[0, 1], [0, 0]], space)
    options = SolverOptions(starts=16, iterations=400, refine_top=4)
    assert v_delta(T, 2, options=options) == pytest.approx(1.0, abs=1e-6)


def test_v_delta_general_space_between_radius_and_norm():
    space = lp_space(2, 3)
    options = SolverOptions(starts=16, iterations=400, refine_top=4)
    T = make_operator([[1, 2], [-1, "1/2"]], space)
    value = v_delta(T, Fraction(1, 4), options=options)
    assert direct_radius(T, options).value - 1e-6 <= value <= float(op_norm(T, options).value) + 1e-6
