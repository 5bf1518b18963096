"""Synthetic graph generators and crawl-style vertex samplers.

Generators provide ground truth for validating the detection pipeline;
samplers reproduce the two crawl strategies (uniform rejection sampling
over a sparse id space, and degree-corrected random walks) together with
a bias report comparing sample and population mean degrees.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import DataError
from .graph import Graph, _frozen
from .community import Partition

MHRW_DEFAULT_SEED_COUNT = 28


@dataclass(frozen=True, eq=False)
class SampleTrace:
    """Step-level log of one sampling run.

    ``steps`` rows are (step, proposed, accepted, current); the step index
    restarts at zero for each independent walk. ``visited`` lists distinct
    accepted vertices in order of first acceptance.
    """

    method: str
    seed: int
    visited: np.ndarray
    steps: np.ndarray


def bernoulli_graph(n: int, p: float, seed: int) -> Graph:
    """Uniform random graph: each unordered pair is an edge with probability p.

    Generated row by row to keep memory linear in n.
    """
    if n < 1:
        raise DataError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise DataError("p must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    us: list[np.ndarray] = []
    vs: list[np.ndarray] = []
    for u in range(n - 1):
        hits = np.nonzero(rng.random(n - 1 - u) < p)[0]
        if hits.size:
            us.append(np.full(hits.size, u, dtype=np.int64))
            vs.append(hits.astype(np.int64) + u + 1)
    if us:
        edges = np.column_stack([np.concatenate(us), np.concatenate(vs)])
    else:
        edges = np.empty((0, 2), dtype=np.int64)
    return Graph.from_edges(n, edges)


def planted_partition(
    n: int, blocks: int, p_in: float, p_out: float, seed: int
) -> tuple[Graph, Partition]:
    """Equal-block planted partition; returns the graph and the block labels.

    Intra-block pairs are wired with p_in, inter-block pairs with p_out.
    Refuses p_in <= p_out: there is no community signal to recover.
    """
    if blocks < 1 or n < 1:
        raise DataError("n and blocks must be >= 1")
    if n % blocks != 0:
        raise DataError(f"blocks ({blocks}) must divide n ({n})")
    for name, prob in (("p_in", p_in), ("p_out", p_out)):
        if not 0.0 <= prob <= 1.0:
            raise DataError(f"{name} must lie in [0, 1]")
    if p_in <= p_out:
        raise DataError("p_in must exceed p_out")
    rng = np.random.default_rng(seed)
    size = n // blocks
    labels = np.repeat(np.arange(blocks, dtype=np.int64), size)
    us: list[np.ndarray] = []
    vs: list[np.ndarray] = []
    iu, iv = np.triu_indices(size, k=1)
    for b1 in range(blocks):
        base1 = b1 * size
        mask = rng.random(iu.size) < p_in
        if mask.any():
            us.append(base1 + iu[mask])
            vs.append(base1 + iv[mask])
        for b2 in range(b1 + 1, blocks):
            base2 = b2 * size
            grid = rng.random((size, size)) < p_out
            gu, gv = np.nonzero(grid)
            if gu.size:
                us.append(base1 + gu.astype(np.int64))
                vs.append(base2 + gv.astype(np.int64))
    if us:
        edges = np.column_stack([np.concatenate(us), np.concatenate(vs)])
    else:
        edges = np.empty((0, 2), dtype=np.int64)
    return Graph.from_edges(n, edges), Partition.from_labels(labels)


def uniform_sample(g: Graph, id_space: int, count: int, seed: int) -> SampleTrace:
    """Rejection sampling over a sparse id space until count distinct vertices accept.

    Ids below ``g.node_count`` exist; the rest of [0, id_space) are holes
    standing in for unassigned user identifiers. Draws of an existing id are
    accepted steps whether or not the vertex is new.
    """
    if id_space < g.node_count:
        raise DataError("id_space must be at least node_count")
    if not 0 <= count <= g.node_count:
        raise DataError("count must lie in [0, node_count]")
    rng = np.random.default_rng(seed)
    n = g.node_count
    seen = np.zeros(n, dtype=bool)
    visited: list[int] = []
    rows: list[tuple[int, int, int]] = []
    while len(visited) < count:
        for prop in rng.integers(0, id_space, size=256).tolist():
            exists = prop < n
            rows.append((prop, int(exists), prop if exists else -1))
            if exists and not seen[prop]:
                seen[prop] = True
                visited.append(prop)
                if len(visited) == count:
                    break
    steps = np.empty((len(rows), 4), dtype=np.int64)
    steps[:, 0] = np.arange(len(rows))
    steps[:, 1:] = np.asarray(rows, dtype=np.int64).reshape(len(rows), 3)
    return SampleTrace(
        method="uniform-rejection",
        seed=seed,
        visited=_frozen(np.asarray(visited, dtype=np.int64)),
        steps=_frozen(steps),
    )


def mhrw_sample(g: Graph, seeds, steps: int, seed: int) -> SampleTrace:
    """Independent degree-corrected random walks, one per seed vertex.

    From the current vertex v a uniform neighbor w is proposed and accepted
    with probability min(1, degree(v)/degree(w)), which targets the uniform
    distribution over vertices; a rejected proposal leaves the walker in
    place for that step (the lazy step keeps the target exact). ``visited``
    is the union of seeds and accepted vertices across walks.
    """
    seed_list = [int(s) for s in np.asarray(seeds, dtype=np.int64).ravel()]
    if not seed_list:
        raise DataError("at least one seed vertex is required")
    if steps < 0:
        raise DataError("steps must be non-negative")
    for s in seed_list:
        if g.degree(s) == 0:
            raise DataError(f"seed vertex {s} has degree 0")
    n = g.node_count
    neigh = [g.indices[g.indptr[v]:g.indptr[v + 1]].tolist() for v in range(n)]
    deg = g.degrees.tolist()
    children = np.random.SeedSequence(seed).spawn(len(seed_list))
    in_visited = np.zeros(n, dtype=bool)
    visited: list[int] = []
    rows = np.empty((steps * len(seed_list), 4), dtype=np.int64)
    row = 0
    for start, child in zip(seed_list, children):
        rng = np.random.default_rng(child)
        pick = rng.random(steps)
        accept = rng.random(steps)
        current = start
        if not in_visited[start]:
            in_visited[start] = True
            visited.append(start)
        nbrs = neigh[current]
        d_v = deg[current]
        for t in range(steps):
            w = nbrs[int(pick[t] * d_v)]
            if accept[t] * deg[w] < d_v:
                current = w
                nbrs = neigh[current]
                d_v = deg[current]
                accepted = 1
                if not in_visited[w]:
                    in_visited[w] = True
                    visited.append(w)
            else:
                accepted = 0
            rows[row] = (t, w, accepted, current)
            row += 1
    return SampleTrace(
        method="mhrw",
        seed=seed,
        visited=_frozen(np.asarray(visited, dtype=np.int64)),
        steps=_frozen(rows),
    )


@dataclass(frozen=True)
class BiasReport:
    sample_mean_degree: float
    population_mean_degree: float
    relative_bias: float


def bias_report(g: Graph, trace: SampleTrace) -> BiasReport:
    """Compare the visited set's mean degree against the population's."""
    if trace.visited.size == 0:
        raise DataError("bias report requires a non-empty trace")
    population = float(g.degrees.mean())
    if population == 0.0:
        raise DataError("population mean degree is zero")
    sample = float(g.degrees[trace.visited].mean())
    return BiasReport(sample, population, (sample - population) / population)


def write_trace_csv(trace: SampleTrace, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(["step", "proposed", "accepted", "current"])
        for row in trace.steps.tolist():
            w.writerow(row)
