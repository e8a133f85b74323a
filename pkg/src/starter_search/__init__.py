"""Starter-block search for line-transitive, point-imprimitive 2-(v,k,1) designs."""

from .dd import DDParams, InterceptVector, Mask, dd_bound, dd_solve, enumerate_masks, intercept_vectors
from .groups import (
    GridGeometry,
    GroupError,
    PairOrbitTable,
    PermGroup,
    Permutation,
    build_normalizer,
    build_parameter_set_group,
    compose,
    enumerate_group,
    grid_generators,
    inverse,
    is_transitive,
    orbits_on_pairs,
    orbits_on_points,
    partition_is_invariant,
    setwise_stabilizer_order,
)
from .orbit_condition import Infeasible, OrbitTargets, full_orbit_condition, make_targets, partial_orbit_check
from .search import SearchConfig, SearchResult, StarterBlock, census, search, search_set1
from .singer import PlaneModel, PrimeFieldPoly, build_plane, find_primitive_cubic, singer_partition
from .verify import Design, VerificationReport, develop, verify

__version__ = "0.1.0"

__all__ = [
    "DDParams",
    "InterceptVector",
    "Mask",
    "dd_bound",
    "dd_solve",
    "enumerate_masks",
    "intercept_vectors",
    "GridGeometry",
    "GroupError",
    "PairOrbitTable",
    "PermGroup",
    "Permutation",
    "build_normalizer",
    "build_parameter_set_group",
    "compose",
    "enumerate_group",
    "grid_generators",
    "inverse",
    "is_transitive",
    "orbits_on_pairs",
    "orbits_on_points",
    "partition_is_invariant",
    "setwise_stabilizer_order",
    "Infeasible",
    "OrbitTargets",
    "full_orbit_condition",
    "make_targets",
    "partial_orbit_check",
    "SearchConfig",
    "SearchResult",
    "StarterBlock",
    "census",
    "search",
    "search_set1",
    "PlaneModel",
    "PrimeFieldPoly",
    "build_plane",
    "find_primitive_cubic",
    "singer_partition",
    "Design",
    "VerificationReport",
    "develop",
    "verify",
]
