"""Independent reference implementations used to cross-check the library.

Nothing here may call into the production formulas being checked: the
modularity oracles work from a dense adjacency matrix, partition search is
exhaustive, and walkers are re-implemented from scratch.
"""

from __future__ import annotations

import numpy as np

from weakties import Graph, WeightedGraph


def dense_adjacency(g) -> np.ndarray:
    """Dense symmetric adjacency; weighted self-loop mass doubles on the diagonal."""
    n = g.node_count
    adj = np.zeros((n, n))
    if isinstance(g, WeightedGraph):
        e = g.edges
        adj[e[:, 0], e[:, 1]] = g.edge_weights
        adj[e[:, 1], e[:, 0]] = g.edge_weights
        adj[np.arange(n), np.arange(n)] = 2.0 * g.self_loops
    else:
        e = g.edges
        adj[e[:, 0], e[:, 1]] = 1.0
        adj[e[:, 1], e[:, 0]] = 1.0
    return adj


def eq1_double_loop(adj: np.ndarray, labels) -> float:
    """Literal double-loop evaluation of the modularity sum."""
    labels = list(labels)
    n = adj.shape[0]
    k = adj.sum(axis=1)
    two_m = float(k.sum())
    total = 0.0
    for i in range(n):
        for j in range(n):
            if labels[i] == labels[j]:
                total += adj[i, j] - k[i] * k[j] / two_m
    return total / two_m


def eq1_matrix(adj: np.ndarray, labels) -> float:
    """Vectorized form of the same sum, for bulk randomized checks."""
    labels = np.asarray(labels)
    k = adj.sum(axis=1)
    two_m = float(k.sum())
    same = labels[:, None] == labels[None, :]
    return float((adj - np.outer(k, k) / two_m)[same].sum()) / two_m


def set_partitions(n: int):
    """Every partition of range(n), as restricted-growth label lists."""
    a = [0] * n
    while True:
        yield a.copy()
        j = n - 1
        while j > 0:
            if a[j] <= max(a[:j]):
                a[j] += 1
                for k in range(j + 1, n):
                    a[k] = 0
                break
            j -= 1
        else:
            return


def exhaustive_max_modularity(g: Graph) -> float:
    """Maximum modularity over all partitions, by enumeration (n <= ~10)."""
    n = g.node_count
    edges = g.edges.tolist()
    k = g.degrees.tolist()
    two_m = float(2 * g.edge_count)
    best = -np.inf
    for labels in set_partitions(n):
        intra = sum(1 for u, v in edges if labels[u] == labels[v])
        stot = [0.0] * n
        for v, lab in enumerate(labels):
            stot[lab] += k[v]
        q = 2.0 * intra / two_m - sum((s / two_m) ** 2 for s in stot)
        if q > best:
            best = q
    return best


def ba_edges(n: int, attach: int, seed: int) -> list[tuple[int, int]]:
    """Preferential-attachment edge list with a heavy-tailed degree sequence."""
    rng = np.random.default_rng(seed)
    repeated: list[int] = []
    edges: list[tuple[int, int]] = []
    for v in range(attach, n):
        if v == attach:
            targets = set(range(attach))
        else:
            targets = set()
            while len(targets) < attach:
                targets.add(repeated[int(rng.random() * len(repeated))])
        for t in targets:
            edges.append((v, t))
            repeated.append(v)
            repeated.append(t)
    return edges


def plain_walk_occupancy(g: Graph, start: int, steps: int, seed: int) -> list[int]:
    """Uncorrected random walk: every proposed neighbor is taken.

    Returns the step-by-step vertex sequence, which is the sample such a
    crawl collects; its stationary law weights vertices by degree.
    """
    rng = np.random.default_rng(seed)
    neigh = [g.indices[g.indptr[v]:g.indptr[v + 1]].tolist() for v in range(g.node_count)]
    r = rng.random(steps)
    sequence = []
    cur = start
    for t in range(steps):
        nbrs = neigh[cur]
        cur = nbrs[int(r[t] * len(nbrs))]
        sequence.append(cur)
    return sequence


def is_connected(g: Graph) -> bool:
    if g.node_count == 0:
        return True
    seen = np.zeros(g.node_count, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        v = stack.pop()
        for u in g.neighbors(v).tolist():
            if not seen[u]:
                seen[u] = True
                stack.append(u)
    return bool(seen.all())


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    """Test-local uniform random graph, independent of the synth module."""
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)
