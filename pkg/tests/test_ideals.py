"""
算子理想测试：嵌入 Φ_J / Ψ_S、判定规则与验证流水线
"""
import numpy as np
import pytest

from banachlab.geometry import lp_space
from banachlab.ideals import SuiteExecutor, default_steps, embed_postcompose, embed_precompose, judge, verify_suite
from banachlab.models import SolverOptions, Verdict
from banachlab.numerical import direct_radius
from banachlab.operators import compose, identity, make_operator, op_norm
from banachlab.utils import make_rng

L11 = lp_space(1, 1, label="l11")
L12 = lp_space(2, 1, label="l12")
LINF2 = lp_space(2, "inf", label="linf2")
L22 = lp_space(2, 2, label="l22")

FAST = SolverOptions(starts=8, iterations=200, refine_top=2, index_starts=32, index_iterations=300)
SUITE_CONFIG = {"transport_samples": 1, "estimate_ideals": False}

HOLDING = (Verdict.HOLDS, Verdict.HOLDS_WITHIN_TOLERANCE)


def test_precompose_identity_is_identity():
    phi = embed_precompose(identity(LINF2), L12)
    assert np.array_equal(phi.matrix, identity(phi.domain).matrix)


def test_precompose_acts_by_composition():
    """vec(T∘J) = Φ_J vec(T)"""
    J = make_operator([[1, 1], [0, 1]], LINF2)
    T = make_operator([[2, -1], [0, 3]], LINF2, L12)
    phi = embed_precompose(J, L12)
    expected = compose(T, J).matrix.reshape(-1)
    assert np.array_equal(phi.apply(T.matrix.reshape(-1)), expected)


def test_precompose_keeps_norm():
    J = make_operator([[1, 1], [0, 1]], LINF2)
    assert op_norm(J).value == 2
    assert float(op_norm(embed_precompose(J, L12)).value) == pytest.approx(2.0)


def test_precompose_is_contravariant():
    """Φ_{J₁∘J₂} = Φ_{J₂}∘Φ_{J₁}"""
    J1 = make_operator([[1, 2], [0, 1]], LINF2)
    J2 = make_operator([[0, 1], [-1, "1/2"]], LINF2)
    left = embed_precompose(compose(J1, J2), L12)
    right = compose(embed_precompose(J2, L12), embed_precompose(J1, L12))
    assert np.array_equal(left.matrix, right.matrix)


def _random_rational(rng):
    numerators = rng.integers(-6, 7, size=(2, 2))
    denominators = rng.integers(1, 5, size=(2, 2))
    return [[f"{n}/{d}" for n, d in zip(row_n, row_d)] for row_n, row_d in zip(numerators, denominators)]


def test_precompose_keeps_norm_and_radius():
    """100 个有理 J：‖Φ_J‖ = ‖J‖，v(Φ_J) ≤ v(J)"""
    rng = make_rng(0x5EED)
    for _ in range(100):
        J = make_operator(_random_rational(rng), LINF2)
        phi = embed_precompose(J, L12)
        assert float(op_norm(phi).value) == pytest.approx(float(op_norm(J).value), abs=1e-9)
        assert float(direct_radius(phi).value) <= float(direct_radius(J).value) + 1e-8


def test_postcompose_keeps_norm_and_radius():
    rng = make_rng(0x5EED + 1)
    for _ in range(100):
        S = make_operator(_random_rational(rng), L12)
        psi = embed_postcompose(S, LINF2)
        assert float(op_norm(psi).value) == pytest.approx(float(op_norm(S).value), abs=1e-9)
        assert float(direct_radius(psi).value) <= float(direct_radius(S).value) + 1e-8


def test_judge_exact():
    assert judge(0.5, True, 1, True, "<=", 1e-4, 1e-9) == (0.5, Verdict.HOLDS)
    margin, verdict = judge(1.5, True, 1, True, "<=", 1e-4, 1e-9)
    assert margin == pytest.approx(-0.5)
    assert verdict == Verdict.VIOLATED


def test_judge_heuristic():
    _, verdict = judge(1.00005, False, 1, True, "<=", 1e-4, 1e-9)
    assert verdict == Verdict.HOLDS_WITHIN_TOLERANCE
    _, verdict = judge(1.01, False, 1, True, "<=", 1e-4, 1e-9)
    assert verdict == Verdict.INCONCLUSIVE_HEURISTIC


def test_judge_equality_and_strict():
    margin, verdict = judge(2, True, 1, True, "=", 1e-4, 1e-9)
    assert margin == -1
    assert verdict == Verdict.VIOLATED
    _, verdict = judge(1, True, 1, True, "<", 1e-4, 1e-9)
    assert verdict == Verdict.VIOLATED
    _, verdict = judge(0.5, True, 1, True, "<", 1e-4, 1e-9)
    assert verdict == Verdict.HOLDS


def test_suite_on_polyhedral_catalog():
    reports = verify_suite([L12, LINF2], FAST, SUITE_CONFIG)
    names = {report.name for report in reports}
    assert "dual-index:l12" in names
    assert "operator-ideal:l12|linf2" in names
    assert "tensor-pi:linf2|l12" in names
    assert "nuclear-ideal:l12|l12" in names
    assert "daugavet-transport:l12|linf2" in names
    assert "daugavet-equation:l12|linf2" in names
    assert all(report.verdict != Verdict.VIOLATED for report in reports)
    operator_ideal = next(r for r in reports if r.name == "operator-ideal:l12|linf2")
    assert operator_ideal.verdict in HOLDING


def test_suite_on_one_dimensional_space():
    reports = verify_suite([L11], FAST, SUITE_CONFIG)
    assert reports
    assert all(report.verdict in HOLDING for report in reports)


def test_tensor_step_on_real_hilbert():
    """实 Hilbert 空间的数值指数为 0，张量积见证同样给出 0"""
    options = SolverOptions(starts=4, iterations=60, refine_top=1, index_starts=32, index_iterations=300)
    executor = SuiteExecutor(default_steps())
    reports = executor.run_step("tensor_pi", [L22], options, SUITE_CONFIG)
    report = next(r for r in reports if r.name == "tensor-pi:l22|l22")
    assert report.lhs is not None
    assert report.lhs <= 1e-4


def test_run_step_unknown():
    with pytest.raises(ValueError):
        SuiteExecutor(default_steps()).run_step("missing", [L12])


def test_daugavet_transport_reports_both_norms():
    """秩一 Daugavet 算子：提升前后都满足 Daugavet 方程，且右端精确"""
    executor = SuiteExecutor(default_steps())
    reports = executor.run_step("transport", [L12, LINF2], FAST, SUITE_CONFIG)
    for prefix in ("daugavet-transport", "daugavet-equation"):
        report = next(r for r in reports if r.name == f"{prefix}:l12|linf2")
        assert report.rhs_exact
        assert report.verdict == Verdict.HOLDS
