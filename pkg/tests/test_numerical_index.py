"""
数值指数测试：精确路径、估计路径与单算子上界
"""
import math
from fractions import Fraction

import numpy as np
import pytest

from banachlab.config import catalog_from_dict, default_catalog_path, parse_catalog
from banachlab.exceptions import GuardrailExceededError, UnsupportedNormError
from banachlab.geometry import dual_space, lp_space
from banachlab.models import IndexMethod, NormKind, SolverOptions
from banachlab.numerical import (
    index_upper_certificate,
    numerical_index,
    numerical_index_estimate,
    numerical_index_exact,
    numerical_radius,
)
from banachlab.operators import identity, make_operator, op_norm

L22 = lp_space(2, 2, label="l22")
L22C = lp_space(2, 2, field="complex", label="l22c")

FAST = SolverOptions(starts=8, iterations=300, refine_top=4, index_starts=32, index_iterations=400)

HEXAGON = {
    "spaces": [{
        "label": "hex",
        "kind": "polyhedral",
        "vertices": [[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]],
        "facets": [[1, 0], [0, 1], [-1, 1], [-1, 0], [0, -1], [1, -1]],
    }],
}


@pytest.mark.parametrize("dim,p", [(1, 1), (2, "inf"), (2, 1), (3, 1)])
def test_exact_index_is_one(dim, p):
    certificate = numerical_index_exact(lp_space(dim, p))
    assert certificate.value == Fraction(1)
    assert certificate.exact
    assert certificate.method == IndexMethod.POLYHEDRAL_ENUMERATION


def test_exact_index_hexagon():
    """中心对称六边形（正六边形的线性像）的数值指数为 1/2"""
    hexagon = catalog_from_dict(HEXAGON).space("hex")
    certificate = numerical_index_exact(hexagon)
    assert certificate.value == Fraction(1, 2)
    witness = certificate.witness_operator
    assert op_norm(witness).value == 1
    assert numerical_radius(witness).value == Fraction(1, 2)


def test_exact_index_rejects_smooth_space():
    with pytest.raises(UnsupportedNormError):
        numerical_index_exact(L22)


def test_exact_index_guardrail():
    with pytest.raises(GuardrailExceededError):
        numerical_index_exact(lp_space(3, "inf"), SolverOptions(exact_index_dim=4))


def test_grid_oracle_for_linf2():
    """步长 0.05 的系数网格上 min v(T)/‖T‖ 与精确数值指数 1 一致"""
    vertices = np.array([[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]])
    facets = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    incident = np.isclose(facets @ vertices.T, 1.0)
    grid = np.round(np.linspace(-1.0, 1.0, 41), 10)
    b, c, d = (axis.reshape(-1) for axis in np.meshgrid(grid, grid, grid, indexing="ij"))
    worst = 1.0
    for a in grid:
        matrices = np.stack([np.full_like(b, a), b, c, d], axis=1).reshape(-1, 2, 2)
        matrices = matrices[np.any(matrices != 0, axis=(1, 2))]
        # values[m, f, v] = f(T_m v)
        values = np.einsum("fi,mij,vj->mfv", facets, matrices, vertices)
        norms = np.max(np.abs(values), axis=(1, 2))
        radii = np.max(np.abs(values[:, incident]), axis=1)
        worst = min(worst, float(np.min(radii / norms)))
    assert worst >= 0.9
    assert worst == pytest.approx(1.0, abs=1e-12)

    X = lp_space(2, "inf")
    for rows in ([[0.35, -1.0], [0.05, 0.6]], [[-0.8, 0.45], [1.0, -0.15]]):
        T = make_operator(np.array(rows), X)
        assert float(numerical_radius(T).value) == pytest.approx(float(op_norm(T).value), abs=1e-12)


def test_estimate_real_hilbert():
    certificate = numerical_index_estimate(L22, options=FAST)
    assert certificate.value == pytest.approx(0.0, abs=1e-6)
    assert certificate.witness_operator is not None


def test_estimate_complex_hilbert():
    certificate = numerical_index_estimate(L22C, options=FAST)
    assert float(certificate.value) == pytest.approx(0.5, abs=1e-3)


def test_estimate_agrees_with_exact():
    X = lp_space(2, "inf")
    estimate = numerical_index_estimate(X, budget=16, options=FAST)
    assert float(estimate.value) == pytest.approx(1.0, abs=1e-6)
    assert numerical_index(X).value == Fraction(1)


def test_estimate_is_deterministic():
    first = numerical_index_estimate(L22C, budget=8, options=FAST)
    second = numerical_index_estimate(L22C, budget=8, options=FAST)
    assert float(first.value) == float(second.value)


def test_upper_certificate_examples():
    assert index_upper_certificate(L22, identity(L22)) == pytest.approx(1.0)
    rotation = make_operator([[0, -1], [1, 0]], L22)
    assert index_upper_certificate(L22, rotation) == pytest.approx(0.0, abs=1e-12)
    l12 = lp_space(2, 1)
    assert index_upper_certificate(l12, make_operator([[0, 1], [1, 0]], l12)) == 1


def test_upper_certificate_rejects_zero():
    l12 = lp_space(2, 1)
    with pytest.raises(ValueError):
        index_upper_certificate(l12, make_operator([[0, 0], [0, 0]], l12))


CATALOG = parse_catalog(default_catalog_path())
ENDOMORPHISM_SPACES = [label for label, space in CATALOG.spaces.items() if space.kind != NormKind.OPERATOR_SPACE]


@pytest.mark.parametrize("label", ENDOMORPHISM_SPACES)
def test_index_of_dual_space_agrees(label):
    space = CATALOG.space(label)
    primal = float(numerical_index(space, options=FAST).value)
    dual = float(numerical_index(dual_space(space), options=FAST).value)
    assert abs(primal - dual) <= 1e-4


@pytest.mark.parametrize("label", [label for label in ENDOMORPHISM_SPACES if not CATALOG.space(label).is_real])
def test_complex_index_floor(label):
    """复空间 n(X) ≥ 1/e"""
    assert float(numerical_index(CATALOG.space(label), options=FAST).value) >= 1 / math.e - 1e-3


def test_operator_space_index_upper_bound():
    """L(ℓ_∞^4, ℓ_1^4) 的顶点超出保护阈值：只评估等距提升候选，给出带来源的上界"""
    space = CATALOG.space("ops_linf4_l14")
    certificate = numerical_index(space, options=FAST)
    assert certificate.method == IndexMethod.WITNESS_ONLY
    assert not certificate.exact
    assert 0 <= float(certificate.value) <= 1 + 1e-9
    assert "facet-lp" in certificate.provenance
    assert "等距提升" in certificate.provenance
