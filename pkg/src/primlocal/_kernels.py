"""Numba kernels for the hot paths: CSR construction, union-find sweeps,
Prim's algorithm with an indexed binary heap, Kruskal edge selection,
and truncated BFS.

All kernels operate on flat numpy arrays so that graphs with millions of
vertices stay cheap to process.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def build_csr(n, eu, ev):
    """Adjacency in CSR form: (indptr, neighbour vertex, incident edge id)."""
    m = eu.size
    deg = np.zeros(n, np.int64)
    for i in range(m):
        deg[eu[i]] += 1
        deg[ev[i]] += 1
    indptr = np.zeros(n + 1, np.int64)
    for v in range(n):
        indptr[v + 1] = indptr[v] + deg[v]
    pos = indptr[:n].copy()
    adj_v = np.empty(2 * m, np.int64)
    adj_e = np.empty(2 * m, np.int64)
    for i in range(m):
        u = eu[i]
        v = ev[i]
        adj_v[pos[u]] = v
        adj_e[pos[u]] = i
        pos[u] += 1
        adj_v[pos[v]] = u
        adj_e[pos[v]] = i
        pos[v] += 1
    return indptr, adj_v, adj_e


@njit(cache=True, nogil=True)
def _uf_find(parent, x):
    r = x
    while parent[r] != r:
        r = parent[r]
    while parent[x] != r:
        nxt = parent[x]
        parent[x] = r
        x = nxt
    return r


@njit(cache=True, nogil=True)
def component_roots(n, eu, ev, w, p):
    """Union-find roots per vertex keeping only edges of weight <= p."""
    parent = np.arange(n)
    size = np.ones(n, np.int64)
    for i in range(eu.size):
        if w[i] <= p:
            ra = _uf_find(parent, eu[i])
            rb = _uf_find(parent, ev[i])
            if ra != rb:
                if size[ra] < size[rb]:
                    ra, rb = rb, ra
                parent[rb] = ra
                size[ra] += size[rb]
    roots = np.empty(n, np.int64)
    for v in range(n):
        roots[v] = _uf_find(parent, v)
    return roots


@njit(cache=True, nogil=True)
def top_two_sweep(n, eu_sorted, ev_sorted, w_sorted, thresholds):
    """Largest and second-largest component sizes at each ascending threshold.

    Edges must be pre-sorted by weight; thresholds must be ascending.
    """
    parent = np.arange(n)
    size = np.ones(n, np.int64)
    c1 = np.zeros(thresholds.size, np.int64)
    c2 = np.zeros(thresholds.size, np.int64)
    ei = 0
    m = w_sorted.size
    for j in range(thresholds.size):
        p = thresholds[j]
        while ei < m and w_sorted[ei] <= p:
            ra = _uf_find(parent, eu_sorted[ei])
            rb = _uf_find(parent, ev_sorted[ei])
            if ra != rb:
                if size[ra] < size[rb]:
                    ra, rb = rb, ra
                parent[rb] = ra
                size[ra] += size[rb]
            ei += 1
        s1 = 0
        s2 = 0
        for v in range(n):
            if _uf_find(parent, v) == v:
                s = size[v]
                if s > s1:
                    s2 = s1
                    s1 = s
                elif s > s2:
                    s2 = s
        c1[j] = s1
        c2[j] = s2
    return c1, c2


@njit(cache=True, nogil=True)
def kruskal_select(n, eu, ev, order):
    """Boolean mask of edges kept by Kruskal, given edge ids sorted by weight."""
    parent = np.arange(n)
    size = np.ones(n, np.int64)
    sel = np.zeros(order.size, np.bool_)
    for j in range(order.size):
        i = order[j]
        ra = _uf_find(parent, eu[i])
        rb = _uf_find(parent, ev[i])
        if ra != rb:
            if size[ra] < size[rb]:
                ra, rb = rb, ra
            parent[rb] = ra
            size[ra] += size[rb]
            sel[i] = True
    return sel


@njit(cache=True, nogil=True)
def _sift_up(heap, hpos, key, i):
    v = heap[i]
    kv = key[v]
    while i > 0:
        par = (i - 1) // 2
        pv = heap[par]
        if key[pv] <= kv:
            break
        heap[i] = pv
        hpos[pv] = i
        i = par
    heap[i] = v
    hpos[v] = i


@njit(cache=True, nogil=True)
def _sift_down(heap, hpos, key, i, size):
    v = heap[i]
    kv = key[v]
    while True:
        c = 2 * i + 1
        if c >= size:
            break
        if c + 1 < size and key[heap[c + 1]] < key[heap[c]]:
            c += 1
        if key[heap[c]] >= kv:
            break
        heap[i] = heap[c]
        hpos[heap[i]] = i
        i = c
    heap[i] = v
    hpos[v] = i


@njit(cache=True, nogil=True)
def prim_order(n, indptr, adj_v, adj_e, w, root):
    """Prim's algorithm with a decrease-key indexed heap.

    Returns (vertex_step, edge_order, count): the step at which each vertex
    joined the tree (-1 if unreached, root at 0), the graph-edge id chosen at
    each step, and the number of vertices reached.
    """
    best_w = np.full(n, np.inf)
    best_e = np.full(n, -1, np.int64)
    state = np.zeros(n, np.int8)  # 0 unseen, 1 queued, 2 done
    heap = np.empty(n, np.int64)
    hpos = np.full(n, -1, np.int64)
    vertex_step = np.full(n, -1, np.int64)
    edge_order = np.full(max(n - 1, 0), -1, np.int64)

    best_w[root] = -1.0
    heap[0] = root
    hpos[root] = 0
    state[root] = 1
    hsize = 1
    count = 0
    while hsize > 0:
        v = heap[0]
        hsize -= 1
        last = heap[hsize]
        heap[0] = last
        hpos[last] = 0
        if hsize > 0:
            _sift_down(heap, hpos, best_w, 0, hsize)
        hpos[v] = -1
        state[v] = 2
        vertex_step[v] = count
        if count > 0:
            edge_order[count - 1] = best_e[v]
        count += 1
        for idx in range(indptr[v], indptr[v + 1]):
            u = adj_v[idx]
            if state[u] == 2:
                continue
            e = adj_e[idx]
            we = w[e]
            if we < best_w[u]:
                best_w[u] = we
                best_e[u] = e
                if state[u] == 0:
                    state[u] = 1
                    heap[hsize] = u
                    hpos[u] = hsize
                    hsize += 1
                    _sift_up(heap, hpos, best_w, hsize - 1)
                else:
                    _sift_up(heap, hpos, best_w, hpos[u])
    return vertex_step, edge_order, count


@njit(cache=True, nogil=True)
def bfs_ball(indptr, adj_v, root, r, cap):
    """Vertices within graph distance r of root, in BFS order.

    Returns (vertices, depth array over the whole graph, overflow flag);
    overflow is set as soon as the ball exceeds `cap` vertices.
    """
    n = indptr.size - 1
    depth = np.full(n, -1, np.int64)
    queue = np.empty(cap, np.int64)
    depth[root] = 0
    queue[0] = root
    qn = 1
    head = 0
    while head < qn:
        v = queue[head]
        head += 1
        if depth[v] == r:
            continue
        for idx in range(indptr[v], indptr[v + 1]):
            u = adj_v[idx]
            if depth[u] == -1:
                if qn >= cap:
                    return queue[:qn], depth, True
                depth[u] = depth[v] + 1
                queue[qn] = u
                qn += 1
    return queue[:qn], depth, False


@njit(cache=True, nogil=True)
def tree_depths(n, eu, ev, edge_order, vertex_step, root):
    """Depth of every tree vertex, following the Prim addition order."""
    depth = np.full(n, -1, np.int64)
    depth[root] = 0
    for k in range(edge_order.size):
        e = edge_order[k]
        if e < 0:
            break
        u = eu[e]
        v = ev[e]
        if vertex_step[u] == k + 1:
            child, par = u, v
        else:
            child, par = v, u
        depth[child] = depth[par] + 1
    return depth
