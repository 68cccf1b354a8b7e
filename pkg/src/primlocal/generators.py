"""Seeded generators for the supported graph families.

Every family attaches i.i.d. Uniform[0,1] edge weights from a counter-based
(Philox) stream, redraws the rare exact collisions so weights are pairwise
distinct, and is byte-identical for a fixed spec.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .graph import WeightedGraph

FAMILIES = ("grid", "triangular", "random-regular", "erdos-renyi", "union")

_REGULAR_RETRY_CAP = 500


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=key)))


def _distinct_uniform(rng: np.random.Generator, m: int) -> np.ndarray:
    w = rng.random(m)
    while True:
        order = np.argsort(w, kind="stable")
        dup = np.zeros(m, bool)
        dup[order[1:]] = w[order[1:]] == w[order[:-1]]
        if not dup.any():
            return w
        w[dup] = rng.random(int(dup.sum()))


def _dedupe_pairs(n: int, eu: np.ndarray, ev: np.ndarray):
    """Canonicalise to u < v and drop duplicate pairs (sorted key order)."""
    lo = np.minimum(eu, ev)
    hi = np.maximum(eu, ev)
    keys = np.unique(lo.astype(np.int64) * n + hi)
    return keys // n, keys % n


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one graph family; identical specs generate byte-identical
    graphs. Lattice families use `side` and `boundary`; random-regular uses
    (n, d); Erdos-Renyi uses (n, lam); union combines two child specs."""

    family: str
    seed: int = 0
    side: int = 0
    boundary: str = "torus"
    n: int = 0
    d: int = 0
    lam: float = 0.0
    child_a: "GenSpec | None" = None
    child_b: "GenSpec | None" = None
    bridges: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family in ("grid", "triangular"):
            if self.side < 2:
                raise ValueError("side must be at least 2")
            if self.boundary not in ("torus", "open"):
                raise ValueError("boundary must be 'torus' or 'open'")
        elif self.family == "random-regular":
            if self.d < 1 or self.d >= self.n:
                raise ValueError("need 1 <= d < n")
            if (self.n * self.d) % 2 != 0:
                raise ValueError("n * d must be even")
        elif self.family == "erdos-renyi":
            if self.n < 2:
                raise ValueError("n must be at least 2")
            if self.lam <= 0 or self.lam / self.n >= 1.0:
                raise ValueError("need 0 < lambda/n < 1")
        elif self.family == "union":
            if self.child_a is None or self.child_b is None:
                raise ValueError("union needs two child specs")
            if self.bridges < 0:
                raise ValueError("bridges must be non-negative")

    def with_seed(self, seed: int) -> "GenSpec":
        if self.family == "union":
            return replace(
                self,
                seed=seed,
                child_a=self.child_a.with_seed(2 * seed + 1),
                child_b=self.child_b.with_seed(2 * seed + 2),
            )
        return replace(self, seed=seed)

    def generate(self) -> WeightedGraph:
        if self.family == "grid":
            return gen_grid(self.side, self.boundary, self.seed)
        if self.family == "triangular":
            return gen_triangular(self.side, self.boundary, self.seed)
        if self.family == "random-regular":
            return gen_random_regular(self.n, self.d, self.seed)
        if self.family == "erdos-renyi":
            return gen_erdos_renyi(self.n, self.lam, self.seed)
        return gen_union(self.child_a, self.child_b, self.bridges, self.seed)

    @property
    def num_vertices(self) -> int:
        if self.family in ("grid", "triangular"):
            return self.side * self.side
        if self.family == "union":
            return self.child_a.num_vertices + self.child_b.num_vertices
        return self.n


def _lattice_edges(side: int, boundary: str, diagonals: bool):
    idx = np.arange(side * side, dtype=np.int64)
    row = idx // side
    col = idx % side
    if boundary == "torus":
        right = row * side + (col + 1) % side
        down = ((row + 1) % side) * side + col
        eu = np.concatenate([idx, idx])
        ev = np.concatenate([right, down])
        if diagonals:
            diag = ((row + 1) % side) * side + (col + 1) % side
            eu = np.concatenate([eu, idx])
            ev = np.concatenate([ev, diag])
    else:
        keep_r = col < side - 1
        keep_d = row < side - 1
        eu = np.concatenate([idx[keep_r], idx[keep_d]])
        ev = np.concatenate([idx[keep_r] + 1, idx[keep_d] + side])
        if diagonals:
            keep = keep_r & keep_d
            eu = np.concatenate([eu, idx[keep]])
            ev = np.concatenate([ev, idx[keep] + side + 1])
    return eu, ev


def _finish_lattice(side: int, eu, ev, seed: int) -> WeightedGraph:
    n = side * side
    eu, ev = _dedupe_pairs(n, eu, ev)
    rng = _rng(seed)
    w = _distinct_uniform(rng, eu.size)
    root = (side // 2) * side + side // 2
    return WeightedGraph(n=n, edges_u=eu, edges_v=ev, weights=w, root=root, seed=seed)


def gen_grid(side: int, boundary: str, seed: int) -> WeightedGraph:
    """Square lattice of side^2 vertices; 4-regular on the torus. The root is
    the centre vertex."""
    if side < 2:
        raise ValueError("side must be at least 2")
    eu, ev = _lattice_edges(side, boundary, diagonals=False)
    return _finish_lattice(side, eu, ev, seed)


def gen_triangular(side: int, boundary: str, seed: int) -> WeightedGraph:
    """Square lattice plus one diagonal per cell (6-regular torus interior)."""
    if side < 2:
        raise ValueError("side must be at least 2")
    if boundary == "torus" and side == 2:
        raise ValueError("2x2 triangular torus is degenerate (duplicate pairs)")
    eu, ev = _lattice_edges(side, boundary, diagonals=True)
    return _finish_lattice(side, eu, ev, seed)


def gen_random_regular(n: int, d: int, seed: int) -> WeightedGraph:
    """Configuration-model pairing resampled until simple; uniform root."""
    if d < 1 or d >= n:
        raise ValueError("need 1 <= d < n")
    if (n * d) % 2 != 0:
        raise ValueError("n * d must be even")
    rng = _rng(seed)
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    for _ in range(_REGULAR_RETRY_CAP):
        perm = rng.permutation(stubs)
        eu = perm[0::2]
        ev = perm[1::2]
        if np.any(eu == ev):
            continue
        lo = np.minimum(eu, ev)
        hi = np.maximum(eu, ev)
        keys = lo * n + hi
        if np.unique(keys).size != keys.size:
            continue
        w = _distinct_uniform(rng, eu.size)
        root = int(rng.integers(n))
        return WeightedGraph(
            n=n, edges_u=lo, edges_v=hi, weights=w, root=root, seed=seed
        )
    raise RuntimeError(
        f"no simple pairing found in {_REGULAR_RETRY_CAP} attempts; "
        "d is likely too dense for the resampling construction"
    )


def _pair_from_linear(n: int, idx: np.ndarray):
    """Invert the lexicographic (u < v) linear pair index."""
    u = (
        n - 2 - np.floor(np.sqrt(-8.0 * idx + 4.0 * n * (n - 1) - 7.0) / 2.0 - 0.5)
    ).astype(np.int64)
    # guard against float rounding at block boundaries
    base = u * (2 * n - u - 1) // 2
    too_high = base > idx
    u[too_high] -= 1
    base = u * (2 * n - u - 1) // 2
    too_low = idx >= (u + 1) * (2 * n - u - 2) // 2
    u[too_low] += 1
    base = u * (2 * n - u - 1) // 2
    v = idx - base + u + 1
    return u, v


def gen_erdos_renyi(n: int, lam: float, seed: int) -> WeightedGraph:
    """Each unordered pair kept independently with probability lambda/n,
    sampled by geometric skipping over the lexicographic pair order."""
    if n < 2:
        raise ValueError("n must be at least 2")
    p = lam / n
    if lam <= 0 or p >= 1.0:
        raise ValueError("need 0 < lambda/n < 1")
    rng = _rng(seed)
    total = n * (n - 1) // 2
    log1mp = np.log1p(-p)
    positions = []
    pos = -1
    # draw skips in chunks; expected edge count is about lam * n / 2
    chunk = max(1024, int(1.3 * lam * n / 2))
    while pos < total:
        u = rng.random(chunk)
        gaps = np.floor(np.log(u) / log1mp).astype(np.int64) + 1
        steps = pos + np.cumsum(gaps)
        positions.append(steps)
        pos = int(steps[-1])
    idx = np.concatenate(positions)
    idx = idx[idx < total]
    eu, ev = _pair_from_linear(n, idx)
    w = _distinct_uniform(rng, eu.size)
    root = int(rng.integers(n))
    return WeightedGraph(n=n, edges_u=eu, edges_v=ev, weights=w, root=root, seed=seed)


def gen_union(
    spec_a: GenSpec, spec_b: GenSpec, bridges: int, seed: int
) -> WeightedGraph:
    """Disjoint union of two generated graphs (ids of the second offset),
    with `bridges` uniformly chosen cross edges carrying fresh weights."""
    if bridges < 0:
        raise ValueError("bridges must be non-negative")
    ga = spec_a.generate()
    gb = spec_b.generate()
    na = ga.n
    rng = _rng(seed, 3)
    eu = np.concatenate([ga.edges_u, gb.edges_u + na])
    ev = np.concatenate([ga.edges_v, gb.edges_v + na])
    w = np.concatenate([ga.weights, gb.weights])
    if bridges > 0:
        seen = set()
        bu, bv = [], []
        while len(bu) < bridges:
            u = int(rng.integers(na))
            v = na + int(rng.integers(gb.n))
            if (u, v) not in seen:
                seen.add((u, v))
                bu.append(u)
                bv.append(v)
        eu = np.concatenate([eu, np.array(bu, np.int64)])
        ev = np.concatenate([ev, np.array(bv, np.int64)])
        w = np.concatenate([w, rng.random(bridges)])
    # resolve collisions across the concatenated weight streams
    while True:
        order = np.argsort(w, kind="stable")
        dup = np.zeros(w.size, bool)
        dup[order[1:]] = w[order[1:]] == w[order[:-1]]
        if not dup.any():
            break
        w[dup] = rng.random(int(dup.sum()))
    root = int(rng.integers(na + gb.n))
    return WeightedGraph(
        n=na + gb.n, edges_u=eu, edges_v=ev, weights=w, root=root, seed=seed
    )
