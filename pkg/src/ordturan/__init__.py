"""Ordered-graph invariants, pattern-free subgraph optimization, and
quasirandom point-matching experiments."""

from .ordgraph import (
    Edge,
    Embedding,
    OrderedGraph,
    blowup,
    chi_interval,
    chromatic_number,
    contains,
    dumps_graph,
    ell_monotone,
    enumerate_embeddings,
    graph,
    has_odd_cycle,
    load_graph,
    loads_graph,
    plus_I,
    save_graph,
)
from .catalog import (
    build_B,
    build_H_d,
    build_H_stair,
    build_M,
    build_P,
    build_Q,
    build_pattern,
)
from .geometry import (
    CLAIM_PATTERN,
    CertReport,
    ClaimReport,
    Interval,
    IntervalUnion,
    MatchingMeta,
    PointEdge,
    PointMatching,
    ResampleBudgetError,
    build_G_d,
    certify_quasirandom,
    check_claim,
    count_edges_between,
    covered_set,
    decompose_blocks,
    dumps_matching,
    endpoints_left,
    endpoints_right,
    f_d,
    gen_quasirandom,
    interval_hull,
    interval_union,
    load_matching,
    loads_matching,
    points_in,
    save_matching,
    subgraph_from_ordered_edges,
    to_ordered_graph,
)
from .solver import (
    SolveReport,
    WitnessRatio,
    best_certified_ratio,
    bipartite_half,
    max_free_greedy,
    min_deletion_exact,
    rho_upper_from_witness,
)
from .densities import (
    DensityBounds,
    bounds_report,
    pi_unordered,
    rho_lower_ell,
    vec_pi,
)
from .harness import VERIFY_IDS, CheckResult, VerifyReport, report_rows, run_verify

__version__ = "0.1.0"
