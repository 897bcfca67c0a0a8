"""
范数几何模块
"""

from .norms import (
    ball_facets,
    ball_vertices,
    conjugate_exponent,
    dual_norm,
    dual_norm_ascent,
    dual_space,
    duality_map,
    euclidean_pair,
    eval_norm,
    extreme_points,
    is_polyhedral,
    norm_is_certified,
    norming_functionals,
    phase,
    support_point,
    try_facets,
    try_vertices,
)
from .polytope import (
    canonical_vertices,
    exact_nullspace,
    exact_rank,
    facets_from_vertices,
    vertices_from_facets,
)
from .scalars import as_matrix, as_vector, format_scalar, parse_scalar, to_exact, to_float
from .spaces import (
    euclidean_space,
    lp_space,
    polyhedral_space,
    sample_sphere,
    weighted_euclidean_space,
)

__all__ = [
    "ball_facets",
    "ball_vertices",
    "conjugate_exponent",
    "dual_norm",
    "dual_norm_ascent",
    "dual_space",
    "duality_map",
    "euclidean_pair",
    "eval_norm",
    "extreme_points",
    "is_polyhedral",
    "norm_is_certified",
    "norming_functionals",
    "phase",
    "support_point",
    "try_facets",
    "try_vertices",
    "canonical_vertices",
    "exact_nullspace",
    "exact_rank",
    "facets_from_vertices",
    "vertices_from_facets",
    "as_matrix",
    "as_vector",
    "format_scalar",
    "parse_scalar",
    "to_exact",
    "to_float",
    "euclidean_space",
    "lp_space",
    "polyhedral_space",
    "sample_sphere",
    "weighted_euclidean_space",
]
