"""Compressed adjacency storage for undirected graphs.

Both graph types are frozen dataclasses over read-only numpy arrays, so
instances are safe to share across threads once built. Construction always
canonicalizes the edge set: no self-loops, no duplicate edges, neighbor
lists sorted ascending.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DataError

log = logging.getLogger(__name__)


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(arr)
    out.setflags(write=False)
    return out


def _as_pair_array(edges) -> np.ndarray:
    arr = np.asarray(edges, dtype=np.int64)
    if arr.size == 0:
        return arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise DataError("edges must be a sequence of (u, v) pairs")
    return arr


def _canonical_pairs(node_count: int, pairs: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
    """Deduplicated (u < v) pairs in lexicographic order, plus the duplicate count.

    Callers must have removed self-loops already; ids must be dense in
    [0, node_count). The dedup key needs node_count**2 to fit in int64.
    """
    assert node_count < 2 ** 31
    lo = np.minimum(pairs[:, 0], pairs[:, 1])
    hi = np.maximum(pairs[:, 0], pairs[:, 1])
    key = np.unique(lo * np.int64(node_count) + hi)
    duplicates = lo.size - key.size
    return key // node_count, key % node_count, int(duplicates)


def _csr_from_pairs(node_count: int, u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """CSR arrays for the symmetric closure of canonical (u < v) pairs."""
    heads = np.concatenate([u, v])
    tails = np.concatenate([v, u])
    order = np.lexsort((tails, heads))
    indices = tails[order]
    indptr = np.zeros(node_count + 1, dtype=np.int64)
    np.cumsum(np.bincount(heads, minlength=node_count), out=indptr[1:])
    return indptr, indices


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected unweighted graph over dense vertex ids.

    Neighbors of ``v`` are ``indices[indptr[v]:indptr[v + 1]]``, sorted
    ascending. ``original_ids[v]`` is the id vertex ``v`` carried in the
    input edge list (the identity mapping for synthetic graphs).
    """

    indptr: np.ndarray
    indices: np.ndarray
    original_ids: np.ndarray
    self_loops_dropped: int = 0
    duplicates_dropped: int = 0

    @property
    def node_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        return _frozen(np.diff(self.indptr))

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        self._check_vertex(v)
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    @cached_property
    def edges(self) -> np.ndarray:
        """Canonical edge enumeration: (m, 2) array with u < v, lexicographically sorted."""
        heads = np.repeat(np.arange(self.node_count, dtype=np.int64), np.diff(self.indptr))
        keep = heads < self.indices
        return _frozen(np.column_stack([heads[keep], self.indices[keep]]))

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.node_count:
            raise DataError(f"vertex {v} out of range [0, {self.node_count})")

    def _validate(self) -> None:
        # handshake lemma, checked after every build
        assert int(self.indptr[-1]) == len(self.indices)
        assert len(self.indices) % 2 == 0
        assert int(self.degrees.sum()) == 2 * self.edge_count

    @classmethod
    def from_edges(cls, node_count: int, edges) -> "Graph":
        """Build over the fixed vertex set [0, node_count), keeping isolated vertices.

        Self-loops are dropped and duplicate edges collapsed, with counts
        recorded on the result.
        """
        if node_count < 0:
            raise DataError("node_count must be non-negative")
        pairs = _as_pair_array(edges)
        if pairs.size and (pairs.min() < 0 or pairs.max() >= node_count):
            raise DataError("edge endpoint outside [0, node_count)")
        loops = int(np.count_nonzero(pairs[:, 0] == pairs[:, 1])) if pairs.size else 0
        if loops:
            pairs = pairs[pairs[:, 0] != pairs[:, 1]]
        if pairs.size:
            u, v, dups = _canonical_pairs(node_count, pairs)
        else:
            u = v = np.zeros(0, dtype=np.int64)
            dups = 0
        indptr, indices = _csr_from_pairs(node_count, u, v)
        g = cls(
            _frozen(indptr),
            _frozen(indices),
            _frozen(np.arange(node_count, dtype=np.int64)),
            self_loops_dropped=loops,
            duplicates_dropped=dups,
        )
        g._validate()
        return g


def build_graph(edges) -> Graph:
    """Build a :class:`Graph` from raw id pairs, remapping ids to dense [0, n).

    Self-loops are dropped (with a counted warning) and duplicate edges
    collapsed; vertices that appear only in dropped self-loops are excluded.
    An empty edge sequence yields the empty graph rather than an error.
    """
    pairs = _as_pair_array(edges)
    if pairs.size and pairs.min() < 0:
        raise DataError("vertex ids must be non-negative")
    loops = int(np.count_nonzero(pairs[:, 0] == pairs[:, 1])) if pairs.size else 0
    if loops:
        log.warning("dropped %d self-loop(s) from input edge list", loops)
        pairs = pairs[pairs[:, 0] != pairs[:, 1]]
    if pairs.size == 0:
        empty = np.zeros(0, dtype=np.int64)
        return Graph(
            _frozen(np.zeros(1, dtype=np.int64)),
            _frozen(empty),
            _frozen(empty),
            self_loops_dropped=loops,
        )
    ids = np.unique(pairs)
    dense = np.searchsorted(ids, pairs)
    u, v, dups = _canonical_pairs(len(ids), dense)
    indptr, indices = _csr_from_pairs(len(ids), u, v)
    g = Graph(
        _frozen(indptr),
        _frozen(indices),
        _frozen(ids),
        self_loops_dropped=loops,
        duplicates_dropped=dups,
    )
    g._validate()
    return g


def degree(g: Graph, v: int) -> int:
    """Number of neighbors of ``v``; raises :class:`DataError` when out of range."""
    return g.degree(v)


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Undirected graph with non-negative edge weights and per-vertex self-loop mass.

    ``self_loops[v]`` holds the intra-community weight folded onto ``v`` by
    aggregation. It enters the weighted degree doubled, mirroring how a loop
    contributes twice to an adjacency-matrix row sum, which keeps modularity
    invariant under aggregation.
    """

    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    self_loops: np.ndarray

    @property
    def node_count(self) -> int:
        return len(self.indptr) - 1

    @cached_property
    def total_weight(self) -> float:
        """Half the symmetric off-diagonal mass plus all self-loop mass (the weighted m)."""
        return float(self.weights.sum()) / 2.0 + float(self.self_loops.sum())

    @cached_property
    def strengths(self) -> np.ndarray:
        """Weighted degree per vertex: incident edge weight plus twice the loop mass."""
        heads = np.repeat(np.arange(self.node_count, dtype=np.int64), np.diff(self.indptr))
        row = np.bincount(heads, weights=self.weights, minlength=self.node_count)
        return _frozen(row + 2.0 * self.self_loops)

    @cached_property
    def _canonical(self) -> tuple[np.ndarray, np.ndarray]:
        heads = np.repeat(np.arange(self.node_count, dtype=np.int64), np.diff(self.indptr))
        keep = heads < self.indices
        pairs = np.column_stack([heads[keep], self.indices[keep]])
        return _frozen(pairs), _frozen(self.weights[keep])

    @property
    def edges(self) -> np.ndarray:
        return self._canonical[0]

    @property
    def edge_weights(self) -> np.ndarray:
        return self._canonical[1]

    def _validate(self) -> None:
        assert len(self.weights) == len(self.indices)
        assert len(self.self_loops) == self.node_count
        assert self.weights.size == 0 or self.weights.min() >= 0
        assert self.self_loops.size == 0 or self.self_loops.min() >= 0

    @classmethod
    def from_graph(cls, g: Graph) -> "WeightedGraph":
        """Unit-weight view of a simple graph (no self-loop mass)."""
        wg = cls(
            g.indptr,
            g.indices,
            _frozen(np.ones(len(g.indices))),
            _frozen(np.zeros(g.node_count)),
        )
        wg._validate()
        return wg

    @classmethod
    def from_pairs(
        cls,
        node_count: int,
        u: np.ndarray,
        v: np.ndarray,
        w: np.ndarray,
        self_loops: np.ndarray,
    ) -> "WeightedGraph":
        """Build from deduplicated canonical (u < v) pairs with weights."""
        heads = np.concatenate([u, v]).astype(np.int64)
        tails = np.concatenate([v, u]).astype(np.int64)
        wts = np.concatenate([w, w]).astype(float)
        order = np.lexsort((tails, heads))
        indptr = np.zeros(node_count + 1, dtype=np.int64)
        np.cumsum(np.bincount(heads, minlength=node_count), out=indptr[1:])
        wg = cls(
            _frozen(indptr),
            _frozen(tails[order]),
            _frozen(wts[order]),
            _frozen(np.asarray(self_loops, dtype=float)),
        )
        wg._validate()
        return wg
