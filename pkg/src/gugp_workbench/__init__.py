"""Workbench for unique games with signed rational edge weights.

The package builds instance families (random games, travelling-salesman
encodings, repeated 3-cut games, two-to-two games), applies weight-designed
reductions between them, solves small instances exactly, runs a factor-2
local search on all-negative games, and machine-checks the structural claims
each reduction relies on.  All arithmetic is exact (`fractions.Fraction`).
"""

from .core import (
    GugpEdge,
    GugpInstance,
    InstanceMetrics,
    Permutation,
    RelEdge,
    Relation,
    RelationKind,
    RelationalInstance,
    classify_relation,
    metrics,
)
from .errors import (
    CapacityError,
    DegenerateInstanceError,
    InternalError,
    ObjectiveMismatchError,
    ParseError,
    UsageError,
    ValidationError,
)
from .evaluation import (
    Objective,
    check_labeling,
    labeling_value,
    relational_satisfied_weight,
    relational_value,
    satisfied_weight,
    unsatisfied_weight,
)
from .fileformat import fmt_fraction, parse, serialize, serialize_labeling
from .generators import FAMILIES, GenResult, GenSpec, generate
from .reductions import (
    BundleMap,
    RepeatedInstance,
    T22Edge,
    TspInstance,
    TwoToTwoInstance,
    all_coords_differ_relation,
    decode_label,
    decode_vertex,
    encode_label_tuple,
    encode_vertex_tuple,
    labeling_to_tour,
    max3cut_instance,
    modplus,
    product_coloring,
    pwt1_gadget,
    repeat_max3cut,
    repeated_from_relational,
    restate_nwa,
    rotation,
    strip_negative,
    t_contains,
    tour_to_labeling,
    tour_weight,
    tsp_to_min_nwa,
    two2two_relation,
    two2two_to_pwt_half,
)
from .rng import SplitMix64
from .solvers import (
    DEFAULT_BRUTE_CAP,
    SolveResult,
    brute_force,
    brute_force_relational,
    local_search_half,
)
from .verification import (
    VerifyReport,
    check_bundle_exactly_one,
    check_gadget_metrics,
    check_half_guarantee,
    check_indicator_weights,
    check_strip_bounds,
    check_tsp_equivalence,
    check_value_transfer,
    coordinate_collision_predicate,
    exhaustive_tsp_optimum,
    isolated_left_vertices,
    pair_block_predicate,
    smoothness,
)

__version__ = "0.1.0"

__all__ = [
    "BundleMap",
    "CapacityError",
    "DEFAULT_BRUTE_CAP",
    "DegenerateInstanceError",
    "FAMILIES",
    "GenResult",
    "GenSpec",
    "GugpEdge",
    "GugpInstance",
    "InstanceMetrics",
    "InternalError",
    "Objective",
    "ObjectiveMismatchError",
    "ParseError",
    "Permutation",
    "RelEdge",
    "Relation",
    "RelationKind",
    "RelationalInstance",
    "RepeatedInstance",
    "SolveResult",
    "SplitMix64",
    "T22Edge",
    "TspInstance",
    "TwoToTwoInstance",
    "UsageError",
    "ValidationError",
    "VerifyReport",
    "all_coords_differ_relation",
    "decode_label",
    "decode_vertex",
    "encode_label_tuple",
    "encode_vertex_tuple",
    "brute_force",
    "brute_force_relational",
    "check_bundle_exactly_one",
    "check_gadget_metrics",
    "check_half_guarantee",
    "check_indicator_weights",
    "check_labeling",
    "check_strip_bounds",
    "check_tsp_equivalence",
    "check_value_transfer",
    "classify_relation",
    "coordinate_collision_predicate",
    "exhaustive_tsp_optimum",
    "fmt_fraction",
    "generate",
    "isolated_left_vertices",
    "labeling_to_tour",
    "labeling_value",
    "local_search_half",
    "max3cut_instance",
    "metrics",
    "modplus",
    "pair_block_predicate",
    "parse",
    "product_coloring",
    "pwt1_gadget",
    "relational_satisfied_weight",
    "relational_value",
    "repeat_max3cut",
    "repeated_from_relational",
    "restate_nwa",
    "rotation",
    "satisfied_weight",
    "serialize",
    "serialize_labeling",
    "smoothness",
    "strip_negative",
    "t_contains",
    "tour_to_labeling",
    "tour_weight",
    "tsp_to_min_nwa",
    "two2two_relation",
    "two2two_to_pwt_half",
    "unsatisfied_weight",
]
