"""Immutable weighted graphs, percolation components, rooted balls, and the
tolerance-based isomorphism machinery used for local comparisons."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import bfs_ball, build_csr, component_roots


class BallOverflowError(RuntimeError):
    """A rooted ball exceeded the configured vertex cap."""


class IsomorphismUndecidedError(RuntimeError):
    """The backtracking search ran out of its node budget before deciding."""


DEFAULT_BALL_CAP = 512
DEFAULT_ISO_BUDGET = 1_000_000


@dataclass
class WeightedGraph:
    """A finite graph with per-edge weights in [0, 1].

    Weights are pairwise distinct by construction; edges are unordered pairs
    with no self-loops and no duplicates. Instances are treated as immutable
    after construction (the CSR adjacency is cached on first use).

    `vertex_ids` is set on subgraphs (Prim prefixes, expanded clusters) and
    maps local vertex ids back to the parent graph's ids.
    """

    n: int
    edges_u: np.ndarray
    edges_v: np.ndarray
    weights: np.ndarray
    root: int | None = None
    seed: int | None = None
    vertex_ids: np.ndarray | None = None
    _csr: tuple | None = field(default=None, repr=False, compare=False)

    @property
    def m(self) -> int:
        return int(self.edges_u.size)

    def csr(self):
        if self._csr is None:
            self._csr = build_csr(self.n, self.edges_u, self.edges_v)
        return self._csr

    def degree(self, v: int) -> int:
        indptr, _, _ = self.csr()
        return int(indptr[v + 1] - indptr[v])

    def validate(self) -> None:
        """Check the structural invariants; raises ValueError on violation."""
        u, v, w = self.edges_u, self.edges_v, self.weights
        if np.any(u == v):
            raise ValueError("self-loop present")
        if w.size and (w.min() < 0.0 or w.max() > 1.0):
            raise ValueError("edge weight outside [0, 1]")
        if np.unique(w).size != w.size:
            raise ValueError("edge weights are not pairwise distinct")
        lo = np.minimum(u, v).astype(np.int64)
        hi = np.maximum(u, v).astype(np.int64)
        keys = lo * self.n + hi
        if np.unique(keys).size != keys.size:
            raise ValueError("duplicate edge between a vertex pair")
        if u.size and (lo.min() < 0 or hi.max() >= self.n):
            raise ValueError("edge endpoint out of range")
        if self.root is not None and not (0 <= self.root < self.n):
            raise ValueError("root out of range")


def weighted_graph(n, edges, root=None, seed=None) -> WeightedGraph:
    """Build a WeightedGraph from an iterable of (u, v, w) triples."""
    edges = list(edges)
    eu = np.array([e[0] for e in edges], np.int64)
    ev = np.array([e[1] for e in edges], np.int64)
    w = np.array([e[2] for e in edges], np.float64)
    g = WeightedGraph(n=n, edges_u=eu, edges_v=ev, weights=w, root=root, seed=seed)
    g.validate()
    return g


def save_graph(g: WeightedGraph, path) -> None:
    """Write the text format: header "n m seed", then m lines "u v w"."""
    with open(path, "w") as fh:
        fh.write(f"{g.n} {g.m} {g.seed if g.seed is not None else 0}\n")
        for u, v, w in zip(g.edges_u, g.edges_v, g.weights):
            fh.write(f"{u} {v} {w:.17g}\n")


def load_graph(path, root=None) -> WeightedGraph:
    with open(path) as fh:
        header = fh.readline().split()
        n, m, seed = int(header[0]), int(header[1]), int(header[2])
        eu = np.empty(m, np.int64)
        ev = np.empty(m, np.int64)
        w = np.empty(m, np.float64)
        for i in range(m):
            parts = fh.readline().split()
            eu[i] = int(parts[0])
            ev[i] = int(parts[1])
            w[i] = float(parts[2])
    return WeightedGraph(n=n, edges_u=eu, edges_v=ev, weights=w, root=root, seed=seed)


@dataclass
class ComponentDecomposition:
    """Connected components of G(p), sizes sorted descending.

    `labels[v]` is a component id; component ids are ordered by the smallest
    vertex they contain. `sizes[r]` is the size of the rank-r component
    (rank 0 = largest; size ties broken by smallest contained vertex id) and
    `rank_of[c]` maps a component id to its rank.
    """

    level: float
    labels: np.ndarray
    sizes: np.ndarray
    rank_of: np.ndarray
    comp_min_vertex: np.ndarray

    @property
    def n(self) -> int:
        return int(self.labels.size)

    @property
    def num_components(self) -> int:
        return int(self.sizes.size)

    def rank(self, v: int) -> int:
        return int(self.rank_of[self.labels[v]])

    def size_of(self, v: int) -> int:
        return int(self.sizes[self.rank(v)])

    def giant_mask(self) -> np.ndarray:
        """Boolean mask of vertices in the largest component."""
        return self.rank_of[self.labels] == 0


def percolate(g: WeightedGraph, p: float) -> ComponentDecomposition:
    """Component decomposition of the subgraph keeping edges of weight <= p."""
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"percolation level must lie in [0, 1], got {p}")
    roots = component_roots(g.n, g.edges_u, g.edges_v, g.weights, p)
    # first occurrence of each root in vertex order == smallest member id
    uniq, first, inverse, counts = np.unique(
        roots, return_index=True, return_inverse=True, return_counts=True
    )
    order = np.lexsort((first, -counts))  # descending size, ties by min vertex
    rank_of = np.empty(uniq.size, np.int64)
    rank_of[order] = np.arange(uniq.size)
    # component ids ordered by smallest contained vertex
    by_min = np.argsort(first, kind="stable")
    id_of = np.empty(uniq.size, np.int64)
    id_of[by_min] = np.arange(uniq.size)
    labels = id_of[inverse]
    rank_by_id = rank_of[by_min]
    return ComponentDecomposition(
        level=p,
        labels=labels,
        sizes=counts[order],
        rank_of=rank_by_id,
        comp_min_vertex=first[by_min].astype(np.int64),
    )


@dataclass
class RootedBall:
    """Radius-r neighbourhood of a vertex, with all internal edges.

    Local vertex 0 is the root; `vertices` maps local ids back to the source
    graph, `depths` are BFS distances from the root.
    """

    radius: int
    vertices: np.ndarray
    depths: np.ndarray
    edges: np.ndarray  # (k, 2) local endpoints
    weights: np.ndarray
    _adj: list | None = field(default=None, repr=False, compare=False)

    @property
    def size(self) -> int:
        return int(self.vertices.size)

    @property
    def num_edges(self) -> int:
        return int(self.weights.size)

    def adjacency(self):
        if self._adj is None:
            adj = [[] for _ in range(self.size)]
            for (a, b), w in zip(self.edges, self.weights):
                adj[a].append((int(b), float(w)))
                adj[b].append((int(a), float(w)))
            self._adj = adj
        return self._adj


def ball(g: WeightedGraph, v: int, r: int, cap: int = DEFAULT_BALL_CAP) -> RootedBall:
    """Rooted ball of radius r around v, including every edge of g whose two
    endpoints both lie in the ball."""
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range")
    if r < 0:
        raise ValueError("radius must be non-negative")
    indptr, adj_v, _ = g.csr()
    verts, depth, overflow = bfs_ball(indptr, adj_v, v, r, cap)
    if overflow:
        raise BallOverflowError(
            f"ball of radius {r} around {v} exceeds the cap of {cap} vertices"
        )
    local = np.full(g.n, -1, np.int64)
    local[verts] = np.arange(verts.size)
    lu = local[g.edges_u]
    lv = local[g.edges_v]
    keep = (lu >= 0) & (lv >= 0)
    edges = np.stack([lu[keep], lv[keep]], axis=1)
    return RootedBall(
        radius=r,
        vertices=verts.copy(),
        depths=depth[verts].copy(),
        edges=edges,
        weights=g.weights[keep].copy(),
    )


def _iso_prune(a: RootedBall, b: RootedBall, eps: float) -> bool:
    if a.size != b.size or a.num_edges != b.num_edges:
        return False
    if not np.array_equal(np.bincount(a.depths), np.bincount(b.depths)):
        return False
    wa = np.sort(a.weights)
    wb = np.sort(b.weights)
    if wa.size and np.max(np.abs(wa - wb)) > eps:
        return False
    da = np.sort([len(x) for x in a.adjacency()])
    db = np.sort([len(x) for x in b.adjacency()])
    return bool(np.array_equal(da, db))


def eps_isomorphic(
    a: RootedBall, b: RootedBall, eps: float, budget: int = DEFAULT_ISO_BUDGET
) -> bool:
    """Root-preserving isomorphism with all edge weights matched within eps.

    Backtracking over BFS order with depth/degree/weight-multiset pruning.
    Raises IsomorphismUndecidedError when the node budget runs out.
    """
    if a.radius != b.radius:
        raise ValueError("balls must have equal radius")
    if eps < 0:
        raise ValueError("eps must be non-negative")
    if not _iso_prune(a, b, eps):
        return False

    size = a.size
    adj_a = a.adjacency()
    adj_b = b.adjacency()
    deg_a = [len(x) for x in adj_a]
    deg_b = [len(x) for x in adj_b]
    phi = np.full(size, -1, np.int64)
    used = np.zeros(size, bool)
    nodes = [0]

    def extend(i: int) -> bool:
        if i == size:
            return True
        nodes[0] += 1
        if nodes[0] > budget:
            raise IsomorphismUndecidedError(
                f"isomorphism search exceeded {budget} nodes"
            )
        da = a.depths[i]
        mapped = [(j, w) for j, w in adj_a[i] if phi[j] >= 0]
        for cand in range(size):
            if used[cand] or b.depths[cand] != da or deg_b[cand] != deg_a[i]:
                continue
            ok = True
            hit = 0
            for j, w in mapped:
                target = phi[j]
                found = False
                for k, wb in adj_b[cand]:
                    if k == target:
                        found = abs(w - wb) <= eps
                        break
                if not found:
                    ok = False
                    break
                hit += 1
            if ok:
                # no extra adjacencies into the mapped region
                extra = sum(1 for k, _ in adj_b[cand] if used[k])
                if extra != hit:
                    ok = False
            if ok:
                phi[i] = cand
                used[cand] = True
                if extend(i + 1):
                    return True
                phi[i] = -1
                used[cand] = False
        return False

    # vertices are in BFS order, so the root maps first and each later vertex
    # has at least one previously mapped neighbour
    return extend(0)


def local_distance(
    ga: WeightedGraph,
    gb: WeightedGraph,
    r_max: int,
    cap: int = DEFAULT_BALL_CAP,
    budget: int = DEFAULT_ISO_BUDGET,
) -> float:
    """Local metric 1/(1+r*) where r* is the largest level <= r_max at which
    the graphs are still equivalent: level r compares the radius r-1 balls
    under a root-preserving isomorphism with weight tolerance 1/r.

    Level 1 compares bare roots and always matches, so the result is at most
    1/2 for rooted graphs. A result equal to 1/(1+r_max) means "at most
    1/(1+r_max)": larger levels were not examined.
    """
    if ga.root is None or gb.root is None:
        raise ValueError("both graphs must be rooted")
    r_star = 0
    for r in range(1, r_max + 1):
        ba = ball(ga, ga.root, r - 1, cap=cap)
        bb = ball(gb, gb.root, r - 1, cap=cap)
        if not eps_isomorphic(ba, bb, 1.0 / r, budget=budget):
            break
        r_star = r
    return 1.0 / (1.0 + r_star)


def equivalent_at(
    ga: WeightedGraph,
    gb: WeightedGraph,
    r: int,
    cap: int = DEFAULT_BALL_CAP,
    budget: int = DEFAULT_ISO_BUDGET,
) -> bool:
    """Radius-r equivalence: 1/r-isomorphism of the radius-r balls.

    Radius 0 is treated as always true (two bare roots always match).
    """
    if r == 0:
        return True
    ba = ball(ga, ga.root, r, cap=cap)
    bb = ball(gb, gb.root, r, cap=cap)
    return eps_isomorphic(ba, bb, 1.0 / r, budget=budget)


def almost_local_statistic(g: WeightedGraph, p: float, k: int) -> float:
    """Fraction of ordered vertex pairs lying in two distinct components of
    size >= k at level p, computed in closed form from component sizes."""
    if k < 1:
        raise ValueError("k must be at least 1")
    decomp = percolate(g, p)
    big = decomp.sizes[decomp.sizes >= k].astype(np.float64)
    s = big.sum()
    return float((s * s - np.dot(big, big)) / (g.n * g.n))
