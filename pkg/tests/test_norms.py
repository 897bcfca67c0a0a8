"""
范数几何测试：范数、对偶范数、范数泛函、极点与对偶空间
"""
from fractions import Fraction

import numpy as np
import pytest

from banachlab.exceptions import NotOnSphereError, UnsupportedNormError
from banachlab.geometry import (
    as_vector,
    ball_vertices,
    dual_norm,
    dual_norm_ascent,
    dual_space,
    eval_norm,
    extreme_points,
    lp_space,
    norming_functionals,
    polyhedral_space,
    support_point,
)
from banachlab.models import NormKind, SolverOptions

SQUARE = [[1, 1], [1, -1], [-1, 1], [-1, -1]]


def _square():
    return polyhedral_space(vertices=SQUARE, label="square")


def test_lp_norms_exact():
    """ℓ_1 与 ℓ_∞ 在有理坐标上给出精确值"""
    assert eval_norm(lp_space(2, 1), as_vector([1, -1])) == Fraction(2)
    assert eval_norm(lp_space(3, "inf"), as_vector(["1/2", -2, 1])) == Fraction(2)


def test_polyhedral_norm_on_vertex():
    assert eval_norm(_square(), as_vector([1, 1])) == Fraction(1)
    assert eval_norm(_square(), as_vector(["1/2", 0])) == Fraction(1, 2)


def test_dual_norms():
    assert dual_norm(lp_space(2, 1), as_vector([3, 4])) == Fraction(4)
    assert float(dual_norm(lp_space(2, 2), as_vector([3, 4]))) == pytest.approx(5.0, abs=1e-12)
    assert dual_norm(_square(), as_vector([1, 1])) == Fraction(2)


def test_dual_norm_matches_ascent_on_polyhedral():
    """顶点最大化与多起点上升交叉检验"""
    options = SolverOptions(starts=16, iterations=400, refine_top=4)
    f = np.array([1.0, 2.0])
    exact = float(dual_norm(_square(), f, options))
    assert exact == pytest.approx(3.0)
    assert dual_norm_ascent(_square(), f, options) == pytest.approx(exact, abs=1e-5)


def test_support_point_attains_dual_norm():
    point, value = support_point(lp_space(2, "inf"), as_vector([3, -4]))
    assert value == Fraction(7)
    assert tuple(point) == (Fraction(1), Fraction(-1))


def test_norming_functionals_l1():
    """ℓ_1^2 中 e_1 的范数面为 {(1,1),(1,−1)}"""
    found = norming_functionals(lp_space(2, 1), as_vector([1, 0]))
    assert {tuple(f.coefficients) for f in found} == {(1, 1), (1, -1)}


def test_norming_functionals_euclidean():
    found = norming_functionals(lp_space(2, 2), np.array([0.6, 0.8]))
    assert len(found) == 1
    np.testing.assert_allclose(found[0].coefficients, [0.6, 0.8], atol=1e-12)


@pytest.mark.parametrize("p", [2, 3])
def test_delta_norming_functionals_are_unit(p):
    space = lp_space(3, p)
    x = np.array([1.0, 2.0, -1.0])
    x = x / float(eval_norm(space, x))
    found = norming_functionals(space, x, delta=0.2, n_samples=24)
    assert len(found) > 1
    for f in found:
        assert float(dual_norm(space, f.coefficients)) == pytest.approx(1.0, abs=1e-9)
        assert float(np.real(np.dot(f.coefficients, x))) > 0.8


def test_norming_functionals_unique_facet():
    found = norming_functionals(lp_space(2, "inf"), as_vector([1, "3/10"]))
    assert [tuple(f.coefficients) for f in found] == [(1, 0)]


def test_norming_functionals_off_sphere():
    with pytest.raises(NotOnSphereError):
        norming_functionals(lp_space(2, 1), as_vector([1, 1]))


def test_extreme_points():
    assert len(extreme_points(lp_space(2, "inf"))) == 4
    points = {tuple(p) for p in extreme_points(lp_space(3, 1))}
    assert len(points) == 6
    assert (1, 0, 0) in points and (0, 0, -1) in points
    with pytest.raises(UnsupportedNormError):
        extreme_points(lp_space(2, 2))


def test_dual_space_kinds():
    dual = dual_space(lp_space(2, 1))
    assert dual.kind == NormKind.LP and dual.p == float("inf")
    assert dual_space(lp_space(3, 2)).p == 2


def test_dual_of_square_is_diamond():
    vertices = set(ball_vertices(dual_space(_square())))
    expected = {(Fraction(1), Fraction(0)), (Fraction(-1), Fraction(0)),
                (Fraction(0), Fraction(1)), (Fraction(0), Fraction(-1))}
    assert vertices == expected


def test_polyhedral_vertex_off_sphere_rejected():
    with pytest.raises(ValueError, match="3/2"):
        polyhedral_space(
            vertices=[[1, 1], [1, -1], [-1, 1], [-1, -1], ["3/2", 0], ["-3/2", 0]],
            facets=[[1, 0], [-1, 0], [0, 1], [0, -1]],
            label="bad",
        )


def test_polyhedral_interior_point_rejected():
    with pytest.raises(ValueError, match="1/2"):
        polyhedral_space(vertices=SQUARE + [["1/2", 0], ["-1/2", 0]], label="bad")


def test_polyhedral_edge_point_rejected():
    """(1, 0) 在正方形的边上，范数为 1 但不是极点"""
    with pytest.raises(ValueError, match="极点"):
        polyhedral_space(vertices=SQUARE + [[1, 0], [-1, 0]], label="bad")


@pytest.mark.parametrize("extra", [["1/4", "1/4"], ["1/2", "1/2"]])
def test_polyhedral_redundant_facet_rejected(extra):
    """(1/4, 1/4) 的对偶范数只有 1/2；(1/2, 1/2) 只支撑一个顶点，不是面"""
    negated = [f"-{c}" for c in extra]
    facets = [[1, 0], [-1, 0], [0, 1], [0, -1], extra, negated]
    with pytest.raises(ValueError, match="1/"):
        polyhedral_space(facets=facets, label="bad")


def test_polyhedral_missing_facet_rejected():
    with pytest.raises(ValueError, match="缺少"):
        polyhedral_space(
            vertices=[[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]],
            facets=[[1, 0], [0, 1], [-1, 0], [0, -1]],
            label="bad",
        )


def test_polyhedral_facets_only_matches_vertices():
    space = polyhedral_space(facets=[[1, 0], [-1, 0], [0, 1], [0, -1]], label="square")
    assert {tuple(v) for v in extreme_points(space)} == {tuple(Fraction(c) for c in v) for v in SQUARE}


def test_polyhedral_asymmetric_rejected():
    with pytest.raises(ValueError):
        polyhedral_space(vertices=[[1, 0], [0, 1], [-1, -1]], label="triangle")
