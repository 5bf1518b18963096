"""Modularity scoring and the two-phase greedy maximizer (Louvain method).

Modularity compares intra-community edge mass against the degree-preserving
null model in which the expected weight between i and j is k_i * k_j / 2m.
The maximizer alternates a local-moving phase, sweeping vertices in a seeded
shuffled order and relocating each into the adjacent community with the
largest positive gain, with an aggregation phase that folds every community
into a single weighted vertex. Levels repeat until no merges occur.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataError
from .graph import Graph, WeightedGraph, _frozen


@dataclass(frozen=True, eq=False)
class Partition:
    """Total assignment of every vertex to exactly one dense community id."""

    labels: np.ndarray
    community_count: int

    @property
    def node_count(self) -> int:
        return len(self.labels)

    def community_of(self, v: int) -> int:
        return int(self.labels[v])

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        """Relabel arbitrary community ids to dense [0, r), preserving id order."""
        arr = np.asarray(labels, dtype=np.int64)
        if arr.ndim != 1:
            raise DataError("labels must be a flat per-vertex array")
        uniq, dense = np.unique(arr, return_inverse=True)
        return cls(_frozen(dense.astype(np.int64)), len(uniq))

    @classmethod
    def singletons(cls, node_count: int) -> "Partition":
        return cls(_frozen(np.arange(node_count, dtype=np.int64)), node_count)

    @classmethod
    def single_community(cls, node_count: int) -> "Partition":
        return cls(_frozen(np.zeros(node_count, dtype=np.int64)), 1 if node_count else 0)


@dataclass(frozen=True, eq=False)
class Dendrogram:
    """Hierarchy of partitions over the original vertex set, coarsest last.

    Each level's communities are unions of the previous level's, and the
    per-level modularity sequence is non-decreasing.
    """

    levels: tuple[Partition, ...]
    modularities: tuple[float, ...]

    def __post_init__(self):
        assert len(self.levels) == len(self.modularities)

    def __len__(self) -> int:
        return len(self.levels)

    @property
    def final(self) -> Partition:
        return self.levels[-1]

    @property
    def final_modularity(self) -> float:
        return self.modularities[-1]


@dataclass(frozen=True)
class LouvainConfig:
    """Knobs for the maximizer; defaults follow common practice.

    ``min_gain`` stops the local-moving phase once a full sweep gains less
    than it; ``vertex_order_seed`` pins the per-level scan shuffle so runs
    are reproducible.
    """

    min_gain: float = 1e-7
    max_levels: int = 32
    vertex_order_seed: int = 0

    def __post_init__(self):
        if self.min_gain < 0:
            raise DataError("min_gain must be non-negative")
        if self.max_levels < 1:
            raise DataError("max_levels must be positive")
        if self.vertex_order_seed < 0:
            raise DataError("vertex_order_seed must be non-negative")


def _edge_view(g) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, float]:
    """(edges, edge_weights, self_loops, strengths, total_weight) for either graph type."""
    if isinstance(g, WeightedGraph):
        return g.edges, g.edge_weights, g.self_loops, g.strengths, g.total_weight
    if isinstance(g, Graph):
        return (
            g.edges,
            np.ones(g.edge_count),
            np.zeros(g.node_count),
            g.degrees.astype(float),
            float(g.edge_count),
        )
    raise DataError(f"expected Graph or WeightedGraph, got {type(g).__name__}")


def _check_partition(g, p: Partition) -> None:
    if p.node_count != g.node_count:
        raise DataError(
            f"partition covers {p.node_count} vertices, graph has {g.node_count}"
        )


def modularity(g, p: Partition) -> float:
    """Partition quality against the degree-preserving null model.

    For weighted graphs the edge weight plays the adjacency role and the
    weighted degree the degree role, with self-loop mass on the diagonal.
    Undefined (raises) on graphs with no edge mass.
    """
    _check_partition(g, p)
    edges, w, loops, k, m = _edge_view(g)
    if m <= 0:
        raise DataError("modularity is undefined on a graph with no edges")
    lab = p.labels
    intra = lab[edges[:, 0]] == lab[edges[:, 1]]
    internal = 2.0 * float(w[intra].sum()) + 2.0 * float(loops.sum())
    sigma_tot = np.bincount(lab, weights=k, minlength=p.community_count)
    two_m = 2.0 * m
    return internal / two_m - float(((sigma_tot / two_m) ** 2).sum())


class LouvainState:
    """Working state for one local-moving phase over a weighted graph.

    Tracks the community of every vertex plus two per-community running
    totals: the summed member strength (``sigma_tot``) and the internal
    ordered-pair mass (``sigma_in``). Gains derived from these match a full
    modularity recomputation to float round-off. Community ids share the
    vertex-id space, as communities only ever shrink from singletons.
    """

    def __init__(self, wg: WeightedGraph, labels=None):
        if wg.total_weight <= 0:
            raise DataError("local moving requires positive total weight")
        n = wg.node_count
        self.m = float(wg.total_weight)
        if labels is None:
            lab = np.arange(n, dtype=np.int64)
        else:
            lab = np.asarray(labels, dtype=np.int64)
            if lab.shape != (n,):
                raise DataError("labels must cover every vertex")
            if lab.min() < 0 or lab.max() >= n:
                raise DataError("community ids must lie in [0, node_count)")
        strengths = wg.strengths
        sigma_tot = np.bincount(lab, weights=strengths, minlength=n)
        e, ew = wg.edges, wg.edge_weights
        intra = lab[e[:, 0]] == lab[e[:, 1]]
        sigma_in = 2.0 * np.bincount(lab[e[intra, 0]], weights=ew[intra], minlength=n)
        sigma_in += 2.0 * np.bincount(lab, weights=wg.self_loops, minlength=n)
        # plain-python mirrors: the sweep inner loop is list and dict bound
        self._label: list[int] = lab.tolist()
        self._sigma_tot: list[float] = sigma_tot.tolist()
        self._sigma_in: list[float] = sigma_in.tolist()
        self._k: list[float] = strengths.tolist()
        self._loop2: list[float] = (2.0 * wg.self_loops).tolist()
        indptr = wg.indptr
        self._neigh = [wg.indices[indptr[v]:indptr[v + 1]].tolist() for v in range(n)]
        self._w = [wg.weights[indptr[v]:indptr[v + 1]].tolist() for v in range(n)]

    @property
    def labels(self) -> np.ndarray:
        return np.asarray(self._label, dtype=np.int64)

    def community_weights(self, v: int) -> dict[int, float]:
        """Total edge weight from ``v`` into each adjacent community."""
        label = self._label
        links: dict[int, float] = {}
        for u, w in zip(self._neigh[v], self._w[v]):
            c = label[u]
            links[c] = links.get(c, 0.0) + w
        return links

    def _gain(self, v: int, c: int, links: dict[int, float]) -> float:
        a = self._label[v]
        k_v = self._k[v]
        stot_a = self._sigma_tot[a] - k_v
        return (links.get(c, 0.0) - links.get(a, 0.0)) / self.m - k_v * (
            self._sigma_tot[c] - stot_a
        ) / (2.0 * self.m * self.m)

    def move_gain(self, v: int, c: int) -> float:
        """Modularity delta for relocating ``v`` into community ``c``.

        Equals ``modularity(after) - modularity(before)`` exactly; zero when
        ``c`` is already v's community.
        """
        if c == self._label[v]:
            return 0.0
        return self._gain(v, c, self.community_weights(v))

    def move(self, v: int, c: int) -> float:
        """Apply the relocation and return its gain."""
        a = self._label[v]
        if c == a:
            return 0.0
        links = self.community_weights(v)
        gain = self._gain(v, c, links)
        self._apply(v, a, c, links)
        return gain

    def _apply(self, v: int, a: int, c: int, links: dict[int, float]) -> None:
        k_v = self._k[v]
        loop2 = self._loop2[v]
        self._sigma_tot[a] -= k_v
        self._sigma_in[a] -= 2.0 * links.get(a, 0.0) + loop2
        self._sigma_tot[c] += k_v
        self._sigma_in[c] += 2.0 * links.get(c, 0.0) + loop2
        self._label[v] = c

    def sweep(self, order) -> tuple[float, int]:
        """One sequential pass over ``order``; returns (total accepted gain, moves).

        Each vertex goes to the adjacent community with the strictly largest
        positive gain; equal gains break toward the lowest community id.
        """
        total = 0.0
        moves = 0
        m = self.m
        two_m_sq = 2.0 * m * m
        sigma_tot = self._sigma_tot
        label = self._label
        for v in order:
            a = label[v]
            links = self.community_weights(v)
            k_v = self._k[v]
            k_va = links.get(a, 0.0)
            stot_a = sigma_tot[a] - k_v
            best_c = a
            best_gain = 0.0
            for c in sorted(links):
                if c == a:
                    continue
                gain = (links[c] - k_va) / m - k_v * (sigma_tot[c] - stot_a) / two_m_sq
                if gain > best_gain:
                    best_gain = gain
                    best_c = c
            if best_c != a:
                self._apply(v, a, best_c, links)
                total += best_gain
                moves += 1
        return total, moves

    def current_modularity(self) -> float:
        two_m = 2.0 * self.m
        return sum(self._sigma_in) / two_m - sum((s / two_m) ** 2 for s in self._sigma_tot)


def move_gain(state: LouvainState, v: int, c: int) -> float:
    """Incremental modularity delta for moving ``v`` into community ``c``."""
    return state.move_gain(v, c)


def aggregate(g, p: Partition) -> WeightedGraph:
    """Fold each community into one vertex, preserving total weight.

    Inter-community weights sum the crossing edges; each vertex's self-loop
    holds its community's internal mass, so modularity of the aggregate under
    the singleton partition equals modularity(g, p).
    """
    _check_partition(g, p)
    edges, w, loops, _, _ = _edge_view(g)
    lab = p.labels
    r = p.community_count
    cu = lab[edges[:, 0]]
    cv = lab[edges[:, 1]]
    intra = cu == cv
    self_loops = np.bincount(cu[intra], weights=w[intra], minlength=r).astype(float)
    self_loops += np.bincount(lab, weights=loops, minlength=r)
    lo = np.minimum(cu[~intra], cv[~intra])
    hi = np.maximum(cu[~intra], cv[~intra])
    key, inverse = np.unique(lo * np.int64(r) + hi, return_inverse=True)
    agg_w = np.bincount(inverse, weights=w[~intra], minlength=len(key))
    return WeightedGraph.from_pairs(r, key // r, key % r, agg_w, self_loops)


def louvain(g: Graph, config: LouvainConfig | None = None) -> Dendrogram:
    """Run the two-phase maximizer and return every level of the hierarchy.

    Phase one sweeps the vertices repeatedly in a per-level seeded shuffle
    until a full sweep gains less than ``config.min_gain`` (or makes no
    move); phase two aggregates communities into a weighted graph. The loop
    ends when a level produces no merges or at ``config.max_levels``. All
    returned partitions are expressed over the input graph's vertices.
    Identical inputs and config yield an identical dendrogram.
    """
    cfg = config or LouvainConfig()
    if g.edge_count == 0:
        raise DataError("community detection requires at least one edge")
    current = WeightedGraph.from_graph(g)
    mapping = np.arange(g.node_count, dtype=np.int64)
    levels: list[Partition] = []
    qs: list[float] = []
    for level in range(cfg.max_levels):
        rng = np.random.default_rng([cfg.vertex_order_seed, level])
        order = rng.permutation(current.node_count).tolist()
        state = LouvainState(current)
        while True:
            gain, moves = state.sweep(order)
            if moves == 0 or gain < cfg.min_gain:
                break
        part = Partition.from_labels(state.labels)
        if part.community_count == current.node_count:
            if not levels:
                # nothing merged at all: the hierarchy is the singleton level
                levels.append(Partition.from_labels(mapping))
                qs.append(modularity(current, part))
            break
        qs.append(modularity(current, part))
        mapping = part.labels[mapping]
        levels.append(Partition.from_labels(mapping))
        current = aggregate(current, part)
    return Dendrogram(tuple(levels), tuple(qs))


def resolution_limit(g: Graph, partition: Partition | None = None):
    """Smallest community size modularity maximization can resolve: sqrt(E/2).

    With a partition, also returns the fraction of its communities below
    that threshold, as ``(threshold, fraction)``.
    """
    threshold = math.sqrt(g.edge_count / 2.0)
    if partition is None:
        return threshold
    sizes = np.bincount(partition.labels, minlength=partition.community_count)
    fraction = float(np.mean(sizes < threshold)) if sizes.size else 0.0
    return threshold, fraction


def write_partition(p: Partition, path) -> None:
    """Serialize as "vertex community" lines, one per vertex."""
    with open(path, "w", encoding="utf-8") as f:
        for v, c in enumerate(p.labels.tolist()):
            f.write(f"{v} {c}\n")


def read_partition(path) -> Partition:
    """Load a "vertex community" file; must assign every vertex exactly once."""
    pairs: dict[int, int] = {}
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise DataError(f"{path}: line {lineno}: expected 'vertex community'")
            try:
                v, c = int(parts[0]), int(parts[1])
            except ValueError:
                raise DataError(f"{path}: line {lineno}: ids must be integers") from None
            if v in pairs:
                raise DataError(f"{path}: line {lineno}: vertex {v} assigned twice")
            pairs[v] = c
    n = len(pairs)
    if n == 0:
        raise DataError(f"{path}: empty partition file")
    labels = np.zeros(n, dtype=np.int64)
    for v, c in pairs.items():
        if not 0 <= v < n:
            raise DataError(f"{path}: vertex ids must be dense in [0, {n})")
        labels[v] = c
    return Partition.from_labels(labels)


def write_dendrogram(d: Dendrogram, directory) -> list[Path]:
    """One partition file per level plus a manifest with per-level modularity."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    manifest = []
    for i, (part, q) in enumerate(zip(d.levels, d.modularities)):
        path = directory / f"level_{i:03d}.partition"
        write_partition(part, path)
        written.append(path)
        manifest.append(
            {"level": i, "file": path.name, "modularity": q, "communities": part.community_count}
        )
    manifest_path = directory / "dendrogram.json"
    manifest_path.write_text(json.dumps({"levels": manifest}, indent=2) + "\n", encoding="utf-8")
    written.append(manifest_path)
    return written
