"""Compiled O(n) kernels shared by the public modules.

Every array here is 0-based ``int64``. Callers do the validation; the
kernels assume well-formed input.
"""

import numpy as np
from numba import njit

UNVISITED, IN_PROGRESS, FINISHED = 0, 1, 2


@njit(cache=True)
def core_mask(f):
    """Boolean mask of the cyclic vertices of ``f``.

    Peels vertices of in-degree zero in FIFO order; whatever survives is the
    core. Each vertex is enqueued at most once, and consecutive queue entries
    are independent loads, which keeps large inputs memory-parallel.
    """
    n = f.shape[0]
    indeg = np.zeros(n, dtype=np.int32)
    for x in range(n):
        indeg[f[x]] += 1
    queue = np.empty(n, dtype=np.int64)
    tail = 0
    for x in range(n):
        if indeg[x] == 0:
            queue[tail] = x
            tail += 1
    head = 0
    while head < tail:
        y = f[queue[head]]
        head += 1
        indeg[y] -= 1
        if indeg[y] == 0:
            queue[tail] = y
            tail += 1
    return indeg > 0


@njit(cache=True)
def core_mask_walk(f):
    """Same result as :func:`core_mask` via a three-colour iterate-until-repeat walk.

    Each vertex turns IN_PROGRESS once and FINISHED once. Kept as an
    independent cross-check of the peeling kernel.
    """
    n = f.shape[0]
    state = np.zeros(n, dtype=np.int8)
    on_core = np.zeros(n, dtype=np.bool_)
    for start in range(n):
        if state[start] != UNVISITED:
            continue
        x = start
        while state[x] == UNVISITED:
            state[x] = IN_PROGRESS
            x = f[x]
        if state[x] == IN_PROGRESS:
            # the walk closed on itself: x lies on a new cycle
            y = x
            while True:
                on_core[y] = True
                y = f[y]
                if y == x:
                    break
        x = start
        while state[x] == IN_PROGRESS:
            state[x] = FINISHED
            x = f[x]
    return on_core


@njit(cache=True)
def renyi_path(f, on_core):
    """Core vertices in Rényi order plus cycle offsets.

    Each cycle starts at its minimum and follows ``f``; cycles are listed by
    decreasing minimum. Cycle ``i`` is ``path[offsets[i]:offsets[i + 1]]``.
    """
    n = f.shape[0]
    m = 0
    for x in range(n):
        if on_core[x]:
            m += 1
    # ascending scan meets every cycle first at its minimum
    ascending = np.empty(m, dtype=np.int64)
    starts = np.empty(m + 1, dtype=np.int64)
    seen = np.zeros(n, dtype=np.bool_)
    pos = 0
    c = 0
    for x in range(n):
        if on_core[x] and not seen[x]:
            starts[c] = pos
            c += 1
            y = x
            while not seen[y]:
                seen[y] = True
                ascending[pos] = y
                pos += 1
                y = f[y]
    starts[c] = m
    path = np.empty(m, dtype=np.int64)
    offsets = np.empty(c + 1, dtype=np.int64)
    pos = 0
    for i in range(c):
        src = c - 1 - i
        offsets[i] = pos
        for j in range(starts[src], starts[src + 1]):
            path[pos] = ascending[j]
            pos += 1
    offsets[c] = m
    return path, offsets


@njit(cache=True)
def count_cycles(f):
    """Number of cycles of ``f`` on its core."""
    on_core = core_mask(f)
    n = f.shape[0]
    seen = np.zeros(n, dtype=np.bool_)
    c = 0
    for x in range(n):
        if on_core[x] and not seen[x]:
            c += 1
            y = x
            while not seen[y]:
                seen[y] = True
                y = f[y]
    return c


@njit(cache=True)
def renyi_tree_edges(f):
    """Edges and roots of the Rényi-Joyal tree of ``f``, without objects."""
    n = f.shape[0]
    on_core = core_mask(f)
    path, offsets = renyi_path(f, on_core)
    m = path.shape[0]
    edges = np.empty((n - 1, 2), dtype=np.int64)
    e = 0
    for x in range(n):
        if not on_core[x]:
            edges[e, 0] = x
            edges[e, 1] = f[x]
            e += 1
    for i in range(m - 1):
        edges[e, 0] = path[i]
        edges[e, 1] = path[i + 1]
        e += 1
    return edges, path[0], path[m - 1], offsets.shape[0] - 1


@njit(cache=True)
def adjacency(n, edges):
    """CSR adjacency (indptr, indices) of an undirected edge list."""
    deg = np.zeros(n + 1, dtype=np.int64)
    for e in range(edges.shape[0]):
        deg[edges[e, 0] + 1] += 1
        deg[edges[e, 1] + 1] += 1
    indptr = np.cumsum(deg)
    fill = indptr[:-1].copy()
    indices = np.empty(indptr[n], dtype=np.int64)
    for e in range(edges.shape[0]):
        u = edges[e, 0]
        v = edges[e, 1]
        indices[fill[u]] = v
        fill[u] += 1
        indices[fill[v]] = u
        fill[v] += 1
    return indptr, indices


@njit(cache=True)
def bfs_parents(n, edges, root):
    """Parent of every vertex in the BFS tree from ``root``.

    ``parent[root] == root``; unreachable vertices keep ``-1``.
    """
    indptr, indices = adjacency(n, edges)
    parent = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    parent[root] = root
    queue[0] = root
    head = 0
    tail = 1
    while head < tail:
        u = queue[head]
        head += 1
        for i in range(indptr[u], indptr[u + 1]):
            v = indices[i]
            if parent[v] == -1:
                parent[v] = u
                queue[tail] = v
                tail += 1
    return parent


@njit(cache=True)
def renyi_inverse(n, edges, root1, root2):
    """Mapping whose Rényi-Joyal image is ``(edges, root1, root2)``."""
    parent = bfs_parents(n, edges, root1)
    # walk root2 -> root1 to recover the root path
    on_path = np.zeros(n, dtype=np.bool_)
    rev = np.empty(n, dtype=np.int64)
    m = 0
    x = root2
    while True:
        rev[m] = x
        m += 1
        on_path[x] = True
        if x == root1:
            break
        x = parent[x]
    f = parent.copy()
    # read root1 -> root2, a new cycle opens at every left-to-right minimum
    run_start = rev[m - 1]
    low = run_start
    for i in range(m - 1, -1, -1):
        x = rev[i]
        if i == 0 or rev[i - 1] < low:
            f[x] = run_start
            if i > 0:
                run_start = rev[i - 1]
                low = run_start
        else:
            f[x] = rev[i - 1]
    return f


@njit(cache=True)
def collapse(g, k):
    """Map on ``{k..n-1}`` (relabelled to ``0..n-k-1``) skipping over S."""
    n = g.shape[0]
    out = np.empty(n - k, dtype=np.int64)
    for x in range(k, n):
        y = g[x]
        if y < k:
            y = g[y]
        out[x - k] = y - k
    return out


@njit(cache=True)
def unconnected_from_edges(n, edges, k):
    """Vertices in ``{k..n-1}`` with no edge into ``{0..k-1}``; loops ignored."""
    touched = np.zeros(n, dtype=np.bool_)
    for e in range(edges.shape[0]):
        u = edges[e, 0]
        v = edges[e, 1]
        if u < k:
            touched[v] = True
        if v < k:
            touched[u] = True
    count = 0
    for x in range(k, n):
        if not touched[x]:
            count += 1
    return count


@njit(cache=True)
def tree_unconnected(image, k):
    """Unconnected count of the Rényi-Joyal tree of ``image``."""
    edges, _, _, _ = renyi_tree_edges(image)
    return unconnected_from_edges(image.shape[0], edges, k)


@njit(cache=True)
def min_indicators(image, k):
    """``min(N_x, M_x)`` for each ``x`` in ``{k..n-1}``.

    ``N_x``: ``x`` is not hit from ``S``. ``M_x``: ``f(x)`` lies outside ``S``.
    """
    n = image.shape[0]
    hit = np.zeros(n, dtype=np.bool_)
    for s in range(k):
        hit[image[s]] = True
    out = np.zeros(n - k, dtype=np.int64)
    for x in range(k, n):
        if not hit[x] and image[x] >= k:
            out[x - k] = 1
    return out


@njit(cache=True)
def sorted_multiset_distance(a, b):
    """``sum |mult_a - mult_b|`` for two sorted key arrays."""
    i = 0
    j = 0
    total = 0
    while i < a.shape[0] and j < b.shape[0]:
        if a[i] == b[j]:
            i += 1
            j += 1
        elif a[i] < b[j]:
            total += 1
            i += 1
        else:
            total += 1
            j += 1
    return total + (a.shape[0] - i) + (b.shape[0] - j)
