"""
切片工具测试：切片、凸包包含、确定族反例搜索、强暴露点与切片版 Daugavet 检验
"""
from fractions import Fraction

import numpy as np
import pytest

from banachlab.exceptions import NotOnSphereError
from banachlab.geometry import as_vector, lp_space
from banachlab.models import SliceSpec
from banachlab.slices import (
    contains_in_conv,
    daugavet_slice_test,
    determining_falsifier,
    slice,
    slice_indices,
    strongly_exposed_check,
)

SEED = 0x5EED
SQUARE = [as_vector(v) for v in ([1, 1], [1, -1], [-1, 1], [-1, -1])]


def _vertex_slice(vertex, depth=Fraction(1, 10)):
    return SliceSpec(points=SQUARE, functional=as_vector(vertex), depth=depth)


def test_slice_at_vertex():
    members = slice(_vertex_slice([1, 1]))
    assert [tuple(p) for p in members] == [(1, 1)]


def test_deep_slice_contains_maximizer():
    spec = SliceSpec(points=SQUARE, functional=as_vector([1, 0]), depth=Fraction(1, 2))
    assert slice_indices(spec) == [0, 1]


def test_slice_from_ball_vertices():
    spec = SliceSpec(ball=lp_space(2, 1), functional=as_vector([1, 0]), depth=Fraction(3, 2))
    points = {tuple(p) for p in slice(spec)}
    assert (1, 0) in points
    assert (-1, 0) not in points


def test_slice_rejects_nonpositive_depth():
    with pytest.raises(ValueError):
        slice(_vertex_slice([1, 1], depth=0))


def test_contains_in_conv():
    assert contains_in_conv([as_vector([0, 0])], SQUARE).contained
    separation = contains_in_conv([as_vector([2, 0])], SQUARE)
    assert not separation.contained
    assert separation.margin == pytest.approx(1.0, abs=1e-9)
    np.testing.assert_allclose(separation.functional, [1.0, 0.0], atol=1e-9)


def test_contains_in_conv_rejects_empty_hull():
    with pytest.raises(ValueError):
        contains_in_conv(SQUARE, [])


def test_single_slice_family_has_counterexample():
    verdict = determining_falsifier(SQUARE, [_vertex_slice([1, 1])], eta=1e-6, seed=SEED)
    assert verdict.found
    assert [tuple(p) for p in verdict.counterexample] == [(1, 1)]
    assert tuple(verdict.separation.point) != (1, 1)
    assert verdict.separation.margin == pytest.approx(2.0, abs=1e-9)


def test_separator_reverifies():
    """返回的分离泛函在原始点集上重新求值得到同一 margin"""
    verdict = determining_falsifier(SQUARE, [_vertex_slice([1, 1])], eta=1e-6, seed=SEED)
    separation = verdict.separation
    f = np.asarray(separation.functional, dtype=float)
    assert np.abs(f).sum() <= 1 + 1e-9
    hull_max = max(float(np.dot(f, np.asarray(b, dtype=float))) for b in verdict.counterexample)
    value = float(np.dot(f, np.asarray(separation.point, dtype=float))) - hull_max
    assert value == pytest.approx(separation.margin, abs=1e-9)


def test_four_vertex_family_is_determining():
    family = [_vertex_slice(v) for v in ([1, 1], [1, -1], [-1, 1], [-1, -1])]
    verdict = determining_falsifier(SQUARE, family, eta=0.25, seed=SEED)
    assert not verdict.found
    assert verdict.resolution["search"] == "exhaustive"


def test_two_point_family_is_determining():
    delta = 0.2
    A = [np.array([-1.0, 0.0]), np.array([1.0, 0.0])]
    family = [
        SliceSpec(points=A, functional=np.array([-1.0, 0.0]), depth=delta),
        SliceSpec(points=A, functional=np.array([1.0, 0.0]), depth=delta),
    ]
    verdict = determining_falsifier(A, family, eta=2 * delta, seed=SEED)
    assert not verdict.found


def test_falsifier_is_deterministic():
    family = [_vertex_slice([1, 1]), _vertex_slice([-1, -1])]
    first = determining_falsifier(SQUARE, family, seed=SEED)
    second = determining_falsifier(SQUARE, family, seed=SEED)
    assert first.found == second.found
    assert first.resolution == second.resolution


def test_enlarging_family_removes_counterexamples():
    small = [_vertex_slice([1, 1]), _vertex_slice([1, -1]), _vertex_slice([-1, 1]), _vertex_slice([-1, -1])]
    large = small + [SliceSpec(points=SQUARE, functional=as_vector([1, 0]), depth=Fraction(1, 2))]
    assert not determining_falsifier(SQUARE, small, eta=0.25, seed=SEED).found
    assert not determining_falsifier(SQUARE, large, eta=0.25, seed=SEED).found
    assert determining_falsifier(SQUARE, small[:1], eta=0.25, seed=SEED).found


def test_falsifier_rejects_empty_family():
    with pytest.raises(ValueError):
        determining_falsifier(SQUARE, [], seed=SEED)


def test_strongly_exposed_in_hilbert_space():
    report = strongly_exposed_check(lp_space(2, 2), np.array([1.0, 0.0]), delta=0.01, epsilon=0.5)
    assert report.holds
    assert report.admissible_samples > 0


def test_cube_vertex_is_not_strongly_exposed():
    report = strongly_exposed_check(lp_space(2, "inf"), as_vector([1, 1]), delta=0.01, epsilon=0.5)
    assert not report.holds
    assert report.counterexample is not None


def test_daugavet_slice_polyhedral():
    space = lp_space(2, "inf")
    holding = daugavet_slice_test(space, as_vector([1, 1]), as_vector(["1/2", "1/2"]), Fraction(1, 10))
    assert holding.holds and holding.exact
    assert holding.best_value == pytest.approx(2.0)
    failing = daugavet_slice_test(space, as_vector([1, 1]), as_vector(["-1/2", "-1/2"]), Fraction(1, 10))
    assert not failing.holds
    assert failing.best_value == pytest.approx(0.2)


def test_daugavet_slice_hilbert_fails():
    report = daugavet_slice_test(lp_space(2, 2), np.array([1.0, 0.0]), np.array([-1.0, 0.0]), 0.1)
    assert not report.holds
    assert not report.exact


def test_daugavet_slice_requires_unit_vectors():
    with pytest.raises(NotOnSphereError):
        daugavet_slice_test(lp_space(2, "inf"), as_vector([2, 0]), as_vector([1, 0]), Fraction(1, 10))
