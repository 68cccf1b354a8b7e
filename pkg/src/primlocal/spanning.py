"""Prim's algorithm with a full trace, the Kruskal cross-check, and the
finite analogues of the invasion cluster and its threshold expansion.

The expansion at level p glues the Prim prefix up to the step where the
algorithm first touches the largest component of G(p) onto the minimum
spanning tree restricted to that component, and keeps the root's part.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .graph import ComponentDecomposition, WeightedGraph, percolate

DEFAULT_ALPHA = 2.0 / 3.0


@dataclass
class PrimTrace:
    """Ordered record of one Prim run.

    vertex_step[v] is the step at which v joined the tree (root at 0, -1 if
    never reached); edge_order[k] is the graph edge id chosen at step k + 1.
    """

    graph: WeightedGraph
    root: int
    vertex_step: np.ndarray
    edge_order: np.ndarray
    count: int
    complete: bool

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def num_steps(self) -> int:
        return self.count - 1

    def step_weights(self) -> np.ndarray:
        return self.graph.weights[self.edge_order]


def prim_trace(g: WeightedGraph, root: int | None = None) -> PrimTrace:
    """Run Prim's algorithm from the root with an indexed decrease-key heap.

    For disconnected input the trace covers only the root's component and
    the `complete` flag is False.
    """
    if root is None:
        root = g.root
    if root is None:
        raise ValueError("no root given and graph is unrooted")
    if not 0 <= root < g.n:
        raise ValueError("root out of range")
    indptr, adj_v, adj_e = g.csr()
    vertex_step, edge_order, count = _kernels.prim_order(
        g.n, indptr, adj_v, adj_e, g.weights, root
    )
    return PrimTrace(
        graph=g,
        root=int(root),
        vertex_step=vertex_step,
        edge_order=edge_order[: count - 1],
        count=int(count),
        complete=count == g.n,
    )


def _tree_from_edges(
    g: WeightedGraph, edge_ids: np.ndarray, root: int
) -> WeightedGraph:
    """Materialize a rooted subgraph from graph edge ids, relabelling the
    touched vertices (root first, then ascending original id)."""
    edge_ids = np.asarray(edge_ids, dtype=np.int64)
    eu = g.edges_u[edge_ids]
    ev = g.edges_v[edge_ids]
    orig = np.unique(np.concatenate([eu, ev, np.array([root], np.int64)]))
    local = np.full(g.n, -1, np.int64)
    local[orig] = np.arange(orig.size)
    # swap the root into local slot 0
    r = local[root]
    if r != 0:
        other = orig[0]
        orig[0], orig[r] = orig[r], other
        local[orig[0]] = 0
        local[orig[r]] = r
    return WeightedGraph(
        n=orig.size,
        edges_u=local[eu],
        edges_v=local[ev],
        weights=g.weights[edge_ids].copy(),
        root=0,
        seed=g.seed,
        vertex_ids=orig,
    )


def prim_prefix(trace: PrimTrace, k: int) -> WeightedGraph:
    """Rooted tree after the first k Prim steps; k past the end of the trace
    yields the full tree of the root's component."""
    if k < 0:
        raise ValueError("k must be non-negative")
    k = min(k, trace.count - 1)
    return _tree_from_edges(trace.graph, trace.edge_order[:k], trace.root)


def kruskal_mst(g: WeightedGraph) -> np.ndarray:
    """Edge ids of the minimum spanning forest via sort plus union-find."""
    order = np.argsort(g.weights, kind="stable")
    sel = _kernels.kruskal_select(g.n, g.edges_u, g.edges_v, order)
    return np.flatnonzero(sel)


def reach_step(trace: PrimTrace, decomp: ComponentDecomposition):
    """Step at which Prim first touches the largest component of G(p).

    Returns (K, entry_vertex) where K is the addition step of the first
    vertex of the largest component (0 iff the root already belongs) and
    entry_vertex is that vertex. If the trace never reaches the largest
    component, returns the sentinel (n - 1, -1).
    """
    if decomp.n != trace.n:
        raise ValueError("decomposition is for a different graph")
    mask = decomp.giant_mask()
    steps = trace.vertex_step[mask]
    steps = steps[steps >= 0]
    if decomp.sizes[0] <= 1 and trace.n > 1:
        return trace.n - 1, -1
    if steps.size == 0:
        return trace.n - 1, -1
    k = int(steps.min())
    entry = int(np.flatnonzero(mask & (trace.vertex_step == k))[0])
    return k, entry


@dataclass
class ExpandedIpc:
    """Root component of the level-p expansion: the Prim prefix up to the
    giant entry step, unioned with the spanning-tree edges inside the entry
    vertex's component."""

    level: float
    K: int
    entry_vertex: int
    tree: WeightedGraph
    edge_ids: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return self.tree.n


def ipc_approx(trace: PrimTrace, alpha: float = DEFAULT_ALPHA) -> np.ndarray:
    """Edge ids of the first-phase prefix of length floor(n^alpha)."""
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0,1)")
    k = min(int(trace.n**alpha), trace.count - 1)
    return trace.edge_order[:k].copy()


def expanded_ipc(
    g: WeightedGraph,
    trace: PrimTrace,
    mst: np.ndarray,
    p: float,
    alpha: float = DEFAULT_ALPHA,
    decomp: ComponentDecomposition | None = None,
) -> ExpandedIpc:
    """Expansion of the invasion cluster at level p.

    When the largest component of G(p) is no bigger than the first-phase
    prefix (floor(n^alpha) vertices), or is unreachable from the root, the
    expansion degenerates to the first-phase prefix itself.
    """
    if decomp is None:
        decomp = percolate(g, p)
    cutoff = int(g.n**alpha)
    if decomp.sizes.size == 0 or decomp.sizes[0] <= cutoff:
        edge_ids = ipc_approx(trace, alpha)
        tree = _tree_from_edges(g, edge_ids, trace.root)
        return ExpandedIpc(
            level=p, K=trace.n - 1, entry_vertex=-1, tree=tree, edge_ids=edge_ids
        )
    k, entry = reach_step(trace, decomp)
    if entry < 0:
        edge_ids = ipc_approx(trace, alpha)
        tree = _tree_from_edges(g, edge_ids, trace.root)
        return ExpandedIpc(
            level=p, K=k, entry_vertex=-1, tree=tree, edge_ids=edge_ids
        )
    giant = decomp.giant_mask()
    inside = giant[g.edges_u[mst]] & giant[g.edges_v[mst]]
    union_ids = np.union1d(trace.edge_order[:k], mst[inside])
    # keep only the root's component of the union
    eu = g.edges_u[union_ids]
    ev = g.edges_v[union_ids]
    roots = _kernels.component_roots(g.n, eu, ev, g.weights[union_ids], 1.0)
    keep = roots[eu] == roots[trace.root]
    edge_ids = union_ids[keep]
    tree = _tree_from_edges(g, edge_ids, trace.root)
    return ExpandedIpc(
        level=p, K=k, entry_vertex=entry, tree=tree, edge_ids=edge_ids
    )


def replay_check(
    g: WeightedGraph, trace: PrimTrace, checks: int = 100, seed: int = 0
) -> bool:
    """Re-scan the boundary at random steps and confirm each chosen edge had
    minimal weight among edges leaving the tree built so far."""
    if trace.num_steps == 0:
        return True
    rng = np.random.default_rng(seed)
    ks = rng.integers(1, trace.num_steps + 1, size=min(checks, trace.num_steps))
    vs = trace.vertex_step
    for k in ks:
        in_tree = (vs >= 0) & (vs < k)
        boundary = in_tree[g.edges_u] ^ in_tree[g.edges_v]
        chosen = trace.edge_order[k - 1]
        if not boundary[chosen]:
            return False
        if g.weights[chosen] > g.weights[boundary].min():
            return False
    return True


def save_trace(trace: PrimTrace, path) -> None:
    """Write 'root n' then one 'step u v w' line per Prim step."""
    g = trace.graph
    with open(path, "w") as f:
        f.write(f"{trace.root} {trace.n}\n")
        for k, e in enumerate(trace.edge_order):
            f.write(
                "%d %d %d %.17g\n" % (k + 1, g.edges_u[e], g.edges_v[e], g.weights[e])
            )


def load_trace(path, g: WeightedGraph) -> PrimTrace:
    """Rebuild a PrimTrace from a trace file and its source graph."""
    key_to_id = {}
    for i in range(g.m):
        key_to_id[(int(g.edges_u[i]), int(g.edges_v[i]))] = i
    with open(path) as f:
        root_s, n_s = f.readline().split()
        root, n = int(root_s), int(n_s)
        if n != g.n:
            raise ValueError("trace does not match graph size")
        rows = [line.split() for line in f if line.strip()]
    edge_order = np.empty(len(rows), np.int64)
    vertex_step = np.full(n, -1, np.int64)
    vertex_step[root] = 0
    in_tree = np.zeros(n, bool)
    in_tree[root] = True
    for k, (step_s, u_s, v_s, _w) in enumerate(rows):
        u, v = int(u_s), int(v_s)
        e = key_to_id.get((min(u, v), max(u, v)))
        if e is None:
            raise ValueError(f"trace edge ({u},{v}) not present in graph")
        edge_order[k] = e
        child = v if in_tree[u] else u
        in_tree[child] = True
        vertex_step[child] = int(step_s)
    count = len(rows) + 1
    return PrimTrace(
        graph=g,
        root=root,
        vertex_step=vertex_step,
        edge_order=edge_order,
        count=count,
        complete=count == n,
    )
