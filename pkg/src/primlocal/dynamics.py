"""Addition and completion times of Prim's algorithm around the root, and
the statistical verification harness comparing partial Prim trees against
level-p expansions of the invasion cluster.

Addition times count vertices of the graph-metric ball of the underlying
graph; completion and ball comparisons use tree-metric balls of the trees
being compared. Both conventions are deliberate and documented per call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._parallel import trial_map
from .generators import GenSpec
from .graph import IsomorphismUndecidedError, WeightedGraph, ball, eps_isomorphic, percolate
from .percolation import ThetaProfile, _trial_seed, empirical_theta, theta_inverse
from .spanning import (
    DEFAULT_ALPHA,
    PrimTrace,
    expanded_ipc,
    ipc_approx,
    kruskal_mst,
    prim_prefix,
    prim_trace,
)

GRAPH_BALL_CAP = 1 << 20


@dataclass
class TimesReport:
    """Normalized addition times of the radius-r graph ball, the completion
    time of the radius-r tree ball, and its curve-based prediction."""

    r: int
    tau: np.ndarray
    completion: float
    prediction: float
    n: int
    seed: int | None

    def to_csv(self, path) -> None:
        with open(path, "w") as f:
            f.write("m,tau_over_n\n")
            for m, t in enumerate(self.tau, start=1):
                f.write("%d,%.17g\n" % (m, t))
            f.write("completion,%.17g\n" % self.completion)
            f.write("prediction,%.17g\n" % self.prediction)


def addition_times(
    g: WeightedGraph, trace: PrimTrace, r: int, cap: int = GRAPH_BALL_CAP
) -> np.ndarray:
    """tau(r,m)/n for m = 1..(reachable ball vertices).

    The m-th entry is the first step at which m vertices of the radius-r
    graph ball around the root are in the tree; the root itself gives
    tau(r,1) = 0.
    """
    if r < 0:
        raise ValueError("r must be non-negative")
    b = ball(g, trace.root, r, cap=cap)
    steps = trace.vertex_step[b.vertices]
    steps = np.sort(steps[steps >= 0])
    return steps / g.n


def _tree_depth_array(trace: PrimTrace) -> np.ndarray:
    g = trace.graph
    return _kernels.tree_depths(
        g.n, g.edges_u, g.edges_v, trace.edge_order, trace.vertex_step, trace.root
    )


def completion_step(trace: PrimTrace, r: int) -> int:
    """First step at which the radius-r tree ball of the final tree is fully
    present: the largest addition step among its vertices."""
    if r < 0:
        raise ValueError("r must be non-negative")
    depth = _tree_depth_array(trace)
    mask = (depth >= 0) & (depth <= r)
    return int(trace.vertex_step[mask].max())


def completion_time(g: WeightedGraph, trace: PrimTrace, r: int) -> float:
    return completion_step(trace, r) / g.n


def completion_prediction(
    g: WeightedGraph,
    trace: PrimTrace,
    mst: np.ndarray,
    profile: ThetaProfile,
    r: int,
    alpha: float = DEFAULT_ALPHA,
) -> float:
    """Largest theta(w(e)) over tree-ball edges outside the first phase.

    Edges of the final tree within tree distance r of the root that the
    length floor(n^alpha) prefix has not collected; an empty set gives 0.
    """
    depth = _tree_depth_array(trace)
    ball_edges = trace.edge_order[
        np.minimum(
            depth[g.edges_u[trace.edge_order]], depth[g.edges_v[trace.edge_order]]
        )
        < r
    ]
    early = set(ipc_approx(trace, alpha).tolist())
    excluded = np.array(
        [e for e in ball_edges.tolist() if e not in early], dtype=np.int64
    )
    if excluded.size == 0:
        return 0.0
    return float(np.max(profile.theta(g.weights[excluded])))


def times_report(
    g: WeightedGraph,
    trace: PrimTrace,
    mst: np.ndarray,
    profile: ThetaProfile,
    r: int,
    alpha: float = DEFAULT_ALPHA,
) -> TimesReport:
    return TimesReport(
        r=r,
        tau=addition_times(g, trace, r),
        completion=completion_time(g, trace, r),
        prediction=completion_prediction(g, trace, mst, profile, r, alpha),
        n=g.n,
        seed=g.seed,
    )


def _steps_for_t(t: float, n: int, alpha: float) -> int:
    if t == 0.0:
        return int(n**alpha)
    return int(t * n)


def _balls_match(tree_a: WeightedGraph, tree_b: WeightedGraph, r: int) -> bool:
    """Tree-metric ball comparison at tolerance 1/r; undecided searches and
    oversized balls count as failure."""
    if r == 0:
        return True
    try:
        ba = ball(tree_a, 0, r)
        bb = ball(tree_b, 0, r)
        return eps_isomorphic(ba, bb, 1.0 / r)
    except (IsomorphismUndecidedError, RuntimeError):
        return False


def verify_marginals(
    spec: GenSpec,
    t_list,
    r: int,
    trials: int,
    alpha: float = DEFAULT_ALPHA,
    profile: ThetaProfile | None = None,
    profile_trials: int = 20,
) -> dict:
    """Ball comparison of the floor(tn)-step prefix against the expansion at
    level theta^{-1}(t), per t and per trial.

    Returns per-t success fractions plus the per-trial joint success
    fraction across the whole t_list.
    """
    t_arr = [float(t) for t in t_list]
    if any(not 0.0 <= t <= 1.0 for t in t_arr):
        raise ValueError("t values must lie in [0,1]")
    if profile is None:
        profile = empirical_theta(spec, trials=profile_trials)
    levels = [theta_inverse(profile, t) for t in t_arr]

    def one(i: int):
        g = spec.with_seed(_trial_seed(spec.seed, 29, i)).generate()
        trace = prim_trace(g)
        mst = kruskal_mst(g)
        flags = []
        for t, p in zip(t_arr, levels):
            k = _steps_for_t(t, g.n, alpha)
            prefix = prim_prefix(trace, k)
            expansion = expanded_ipc(g, trace, mst, p, alpha)
            flags.append(_balls_match(prefix, expansion.tree, r))
        return flags

    results = trial_map(one, trials)
    per_t = [float(np.mean([res[j] for res in results])) for j in range(len(t_arr))]
    joint = float(np.mean([all(res) for res in results]))
    return {
        "t": t_arr,
        "levels": levels,
        "r": r,
        "trials": trials,
        "success": per_t,
        "joint_success": joint,
    }


def verify_marginal(
    spec: GenSpec,
    t: float,
    r: int,
    trials: int,
    alpha: float = DEFAULT_ALPHA,
    profile: ThetaProfile | None = None,
) -> float:
    report = verify_marginals(spec, [t], r, trials, alpha, profile)
    return report["success"][0]


def verify_exact_step(spec: GenSpec, p: float, r: int, trials: int) -> float:
    """Exact finite identity check: the prefix with K + |C1(p)| vertices
    against the level-p expansion, compared on radius-r tree balls."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0,1]")

    def one(i: int) -> bool:
        g = spec.with_seed(_trial_seed(spec.seed, 31, i)).generate()
        trace = prim_trace(g)
        mst = kruskal_mst(g)
        decomp = percolate(g, p)
        expansion = expanded_ipc(g, trace, mst, p, decomp=decomp)
        if expansion.entry_vertex < 0:
            # degenerate level: compare the first-phase prefix with itself
            k = expansion.tree.n - 1
        else:
            k = expansion.K + int(decomp.sizes[0]) - 1
        prefix = prim_prefix(trace, k)
        return _balls_match(prefix, expansion.tree, r)

    return float(np.mean(trial_map(one, trials)))


def verify_process_conditions(
    spec: GenSpec,
    t_grid,
    r: int,
    delta_list,
    trials: int,
    alpha: float = DEFAULT_ALPHA,
    profile: ThetaProfile | None = None,
) -> dict:
    """The three finite process statistics.

    (a) joint marginal success across t_grid within single trials;
    (b) per delta, the fraction of trials whose radius-r tree ball still
        changes within the last floor(delta * (n-1)) steps;
    (c) per delta, the fraction of trials with two ball-change bursts closer
        than delta * n steps after the first phase. Additions within
        floor(n^(1/3)) steps of each other belong to one burst: a single
        entry event collects a whole subtree in a sub-linear flurry, which
        the limit counts as one jump.
    """
    t_arr = sorted(float(t) for t in t_grid)
    deltas = [float(d) for d in delta_list]
    marg = verify_marginals(spec, t_arr, r, trials, alpha, profile)

    def one(i: int):
        g = spec.with_seed(_trial_seed(spec.seed, 29, i)).generate()
        trace = prim_trace(g)
        depth = _tree_depth_array(trace)
        mask = (depth >= 0) & (depth <= r)
        steps = np.sort(trace.vertex_step[mask])
        comp = int(steps.max())
        late = steps[steps >= int(g.n**alpha)]
        gap = g.n
        if late.size >= 2:
            burst = max(1, int(g.n ** (1.0 / 3.0)))
            starts = late[np.concatenate([[True], np.diff(late) > burst])]
            if starts.size >= 2:
                gap = int(np.diff(starts).min())
        return comp, gap, g.n

    stats = trial_map(one, trials)
    continuity = []
    double_jump = []
    for d in deltas:
        cont = np.mean(
            [comp > math.floor((1.0 - d) * (n - 1)) for comp, _, n in stats]
        )
        dj = np.mean([gap < d * n for _, gap, n in stats])
        continuity.append(float(cont))
        double_jump.append(float(dj))
    return {
        "t_grid": t_arr,
        "r": r,
        "trials": trials,
        "delta": deltas,
        "joint_success": marg["joint_success"],
        "marginal_success": marg["success"],
        "continuity_at_one": continuity,
        "double_jump": double_jump,
    }


def two_phase_check(
    spec: GenSpec,
    r: int,
    trials: int,
    alpha: float = DEFAULT_ALPHA,
) -> float:
    """Fraction of trials where the early ball vertices (addition time below
    n^(alpha-1) log n of the run) are exactly the ball vertices collected by
    the first-phase prefix."""

    def one(i: int) -> bool:
        g = spec.with_seed(_trial_seed(spec.seed, 37, i)).generate()
        trace = prim_trace(g)
        b = ball(g, trace.root, r, cap=GRAPH_BALL_CAP)
        steps = trace.vertex_step[b.vertices]
        reached = steps >= 0
        fast = reached & (steps < (g.n**alpha) * math.log(g.n))
        early = reached & (steps <= int(g.n**alpha))
        return bool(np.array_equal(fast, early))

    return float(np.mean(trial_map(one, trials)))
