"""Step-by-step Prim's algorithm on large random weighted graphs, with
percolation-based local-limit diagnostics."""

from .dynamics import (
    TimesReport,
    addition_times,
    completion_prediction,
    completion_time,
    times_report,
    two_phase_check,
    verify_exact_step,
    verify_marginal,
    verify_marginals,
    verify_process_conditions,
)
from .generators import (
    GenSpec,
    gen_erdos_renyi,
    gen_grid,
    gen_random_regular,
    gen_triangular,
    gen_union,
)
from .graph import (
    BallOverflowError,
    ComponentDecomposition,
    IsomorphismUndecidedError,
    RootedBall,
    WeightedGraph,
    almost_local_statistic,
    ball,
    eps_isomorphic,
    equivalent_at,
    load_graph,
    local_distance,
    percolate,
    save_graph,
    weighted_graph,
)
from .percolation import (
    ThetaProfile,
    analytic_theta_regular,
    assumption_report,
    empirical_theta,
    theta_inverse,
)
from .render import render_ppm
from .spanning import (
    ExpandedIpc,
    PrimTrace,
    expanded_ipc,
    ipc_approx,
    kruskal_mst,
    load_trace,
    prim_prefix,
    prim_trace,
    reach_step,
    replay_check,
    save_trace,
)

__version__ = "0.1.0"

__all__ = [
    "BallOverflowError",
    "ComponentDecomposition",
    "ExpandedIpc",
    "GenSpec",
    "IsomorphismUndecidedError",
    "PrimTrace",
    "RootedBall",
    "ThetaProfile",
    "TimesReport",
    "WeightedGraph",
    "addition_times",
    "almost_local_statistic",
    "analytic_theta_regular",
    "assumption_report",
    "ball",
    "completion_prediction",
    "completion_time",
    "empirical_theta",
    "eps_isomorphic",
    "equivalent_at",
    "expanded_ipc",
    "gen_erdos_renyi",
    "gen_grid",
    "gen_random_regular",
    "gen_triangular",
    "gen_union",
    "ipc_approx",
    "kruskal_mst",
    "load_graph",
    "load_trace",
    "local_distance",
    "percolate",
    "prim_prefix",
    "prim_trace",
    "reach_step",
    "render_ppm",
    "replay_check",
    "save_graph",
    "save_trace",
    "theta_inverse",
    "times_report",
    "two_phase_check",
    "verify_exact_step",
    "verify_marginal",
    "verify_marginals",
    "verify_process_conditions",
    "weighted_graph",
]
