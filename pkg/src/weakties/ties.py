"""Strong/weak classification of edges against a community partition.

An edge is a weak tie when its endpoints sit in different communities and
a strong tie otherwise. Labels align with the graph's canonical edge
enumeration (``Graph.edges`` order).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError
from .graph import Graph, _frozen
from .community import Partition, _check_partition


@dataclass(frozen=True, eq=False)
class TieLabeling:
    """Per-edge weak flags aligned with ``Graph.edges`` order."""

    weak: np.ndarray

    @property
    def edge_count(self) -> int:
        return len(self.weak)

    @property
    def weak_count(self) -> int:
        return int(np.count_nonzero(self.weak))

    @property
    def strong_count(self) -> int:
        return self.edge_count - self.weak_count


def classify_ties(g: Graph, p: Partition) -> TieLabeling:
    """Label every edge weak iff its endpoints belong to different communities."""
    _check_partition(g, p)
    e = g.edges
    return TieLabeling(_frozen(p.labels[e[:, 0]] != p.labels[e[:, 1]]))


def _check_labeling(g: Graph, t: TieLabeling) -> None:
    if t.edge_count != g.edge_count:
        raise DataError(
            f"labeling covers {t.edge_count} edges, graph has {g.edge_count}"
        )


def tie_counts_per_node(g: Graph, t: TieLabeling) -> tuple[np.ndarray, np.ndarray]:
    """(strong, weak) incident-tie counts per vertex; they sum to the degree."""
    _check_labeling(g, t)
    e = g.edges
    n = g.node_count
    weak = np.bincount(np.concatenate([e[t.weak, 0], e[t.weak, 1]]), minlength=n)
    strong = np.bincount(np.concatenate([e[~t.weak, 0], e[~t.weak, 1]]), minlength=n)
    return strong, weak


def tie_ratio(t: TieLabeling) -> tuple[float, float]:
    """(weak_fraction, strong_fraction); they sum to one."""
    if t.edge_count == 0:
        raise DataError("tie ratio is undefined without edges")
    wf = t.weak_count / t.edge_count
    return wf, 1.0 - wf


def tipping_point(strong_counts, weak_counts) -> int | None:
    """Smallest degree k above which weak ties outnumber strong ones on average.

    Returns the smallest integer k such that vertices of degree > k have a
    mean weak count strictly exceeding their mean strong count, or ``None``
    when no such k exists. This formalizes a crossover that is usually read
    off a plot; alternatives (median, per-node majority) would be possible.
    """
    strong = np.asarray(strong_counts, dtype=np.int64)
    weak = np.asarray(weak_counts, dtype=np.int64)
    if strong.shape != weak.shape or strong.ndim != 1:
        raise DataError("strong and weak counts must be flat arrays of equal length")
    if strong.size == 0:
        raise DataError("tipping point requires at least one vertex")
    degrees = strong + weak
    order = np.argsort(degrees, kind="stable")
    deg_sorted = degrees[order]
    # suffix sums: totals over vertices of degree >= deg_sorted[i]
    strong_suffix = np.cumsum(strong[order][::-1])[::-1]
    weak_suffix = np.cumsum(weak[order][::-1])[::-1]
    distinct, starts = np.unique(deg_sorted, return_index=True)
    count_suffix = strong.size - starts
    # candidate thresholds: k, paired with the suffix {degree >= distinct[i]}
    first = 0 if distinct[0] > 0 else 1
    candidates = [(0, first)] if first < distinct.size else []
    candidates += [(int(distinct[i - 1]), i) for i in range(max(first + 1, 1), distinct.size)]
    for k, i in candidates:
        s = starts[i]
        c = count_suffix[i]
        if weak_suffix[s] / c > strong_suffix[s] / c:
            return k
    return None


def tie_means_by_degree(g: Graph, t: TieLabeling) -> list[tuple[int, float, float, int]]:
    """Per-degree (degree, mean_strong, mean_weak, vertex_count) rows.

    Degree-binned view of the per-node counts, so either a rank-style or a
    degree-style plot can be rebuilt from the output.
    """
    strong, weak = tie_counts_per_node(g, t)
    degrees = g.degrees
    rows = []
    for d in np.unique(degrees):
        mask = degrees == d
        rows.append(
            (int(d), float(strong[mask].mean()), float(weak[mask].mean()), int(mask.sum()))
        )
    return rows


def write_labeling(g: Graph, t: TieLabeling, path) -> None:
    """Serialize as "u v S" / "u v W" lines in canonical edge order."""
    _check_labeling(g, t)
    flags = np.where(t.weak, "W", "S")
    with open(path, "w", encoding="utf-8") as f:
        for (u, v), flag in zip(g.edges.tolist(), flags.tolist()):
            f.write(f"{u} {v} {flag}\n")


def read_labeling(g: Graph, path) -> TieLabeling:
    """Load a labeling file; its edge set must match the graph exactly."""
    us, vs, flags = [], [], []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3 or parts[2] not in ("S", "W"):
                raise DataError(f"{path}: line {lineno}: expected 'u v S|W'")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise DataError(f"{path}: line {lineno}: ids must be integers") from None
            us.append(min(u, v))
            vs.append(max(u, v))
            flags.append(parts[2] == "W")
    if len(us) != g.edge_count:
        raise DataError(f"{path}: labeling covers {len(us)} edges, graph has {g.edge_count}")
    pairs = np.column_stack([np.asarray(us, dtype=np.int64), np.asarray(vs, dtype=np.int64)])
    weak = np.asarray(flags, dtype=bool)
    order = np.lexsort((pairs[:, 1], pairs[:, 0]))
    if not np.array_equal(pairs[order], g.edges):
        raise DataError(f"{path}: labeled edges do not match the graph's edge set")
    return TieLabeling(_frozen(weak[order]))
