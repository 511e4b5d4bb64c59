"""Exact computations with the blocked-matrix embedding of type-A quiver
representations: interval rank tables, attached permutations, interval
decompositions, multiplicity counts, and randomized verification suites.
"""

from .exact_linalg import (
    FP_DEFAULT,
    RATIONAL,
    BlockedMatrix,
    Field,
    Matrix,
    block_diag,
    random_invertible,
    random_matrix,
    stacked_rank_property,
)
from .harness import HarnessOptions, SUITE_NAMES, SuiteReport, run_check, run_suite
from .multiplicity import (
    mult_matrix,
    multiplicities_from_ranks,
    predicted_mult_matrix,
    ranksum_identity,
    realizable_matrix,
)
from .quiver import (
    BoundaryError,
    QuiverA,
    col_label,
    col_order,
    constant_positions,
    critical_points,
    interval_windows,
    intervals,
    maximal_paths,
    path_between,
    row_label,
    row_order,
)
from .representation import (
    RankParameters,
    Representation,
    decompose,
    direct_sum,
    edge_shape,
    gl_action,
    in_orbit_closure,
    interval_matrix,
    interval_rep,
    random_rep,
    rank_parameters,
    rep_from_multiplicities,
    same_orbit,
    solve_interval_multiplicities,
)
from .zelevinsky import (
    CellPatternError,
    NotInImageError,
    Permutation,
    RealizabilityError,
    block_kind,
    bruhat_leq,
    bruhat_leq_full,
    is_z_type,
    kl_membership,
    rank_identity_report,
    target_rank_table,
    zelevinsky_matrix,
    zelevinsky_perm,
    zelevinsky_preimage,
    zero_rep_perm,
)

__version__ = "0.1.0"

__all__ = [
    "BlockedMatrix",
    "BoundaryError",
    "CellPatternError",
    "FP_DEFAULT",
    "Field",
    "HarnessOptions",
    "Matrix",
    "NotInImageError",
    "Permutation",
    "QuiverA",
    "RATIONAL",
    "RankParameters",
    "RealizabilityError",
    "Representation",
    "SUITE_NAMES",
    "SuiteReport",
    "block_diag",
    "block_kind",
    "bruhat_leq",
    "bruhat_leq_full",
    "col_label",
    "col_order",
    "constant_positions",
    "critical_points",
    "decompose",
    "direct_sum",
    "edge_shape",
    "gl_action",
    "in_orbit_closure",
    "interval_matrix",
    "interval_rep",
    "interval_windows",
    "intervals",
    "is_z_type",
    "kl_membership",
    "maximal_paths",
    "mult_matrix",
    "multiplicities_from_ranks",
    "path_between",
    "predicted_mult_matrix",
    "random_invertible",
    "random_matrix",
    "random_rep",
    "rank_identity_report",
    "rank_parameters",
    "ranksum_identity",
    "realizable_matrix",
    "rep_from_multiplicities",
    "row_label",
    "row_order",
    "run_check",
    "run_suite",
    "same_orbit",
    "solve_interval_multiplicities",
    "stacked_rank_property",
    "target_rank_table",
    "zelevinsky_matrix",
    "zelevinsky_perm",
    "zelevinsky_preimage",
    "zero_rep_perm",
]
