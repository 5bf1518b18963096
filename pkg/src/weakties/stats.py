"""Distribution statistics: CCDFs, community sizes, weak-tie density maps,
link fractions, log-log fits, and partition comparison via NMI.

Everything here is a pure function over immutable inputs. CSV writers emit
headers and 12-significant-digit decimals so outputs are byte-reproducible.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import DataError
from .graph import Graph, _frozen
from .community import Partition
from .ties import TieLabeling, _check_labeling


@dataclass(frozen=True, eq=False)
class CcdfSeries:
    """Empirical tail distribution: Pr(X > x) at each distinct sample value."""

    values: np.ndarray
    tail_probs: np.ndarray

    def __post_init__(self):
        assert self.values.shape == self.tail_probs.shape
        assert np.all(np.diff(self.values) > 0)
        p = self.tail_probs
        assert p.size == 0 or (p.min() >= 0.0 and p.max() <= 1.0)
        assert np.all(np.diff(p) <= 0)

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.values.tolist(), self.tail_probs.tolist()))


def ccdf(samples) -> CcdfSeries:
    """Complementary CDF of raw samples: prob = (# samples strictly > x) / n."""
    arr = np.asarray(samples, dtype=float).ravel()
    if arr.size == 0:
        raise DataError("CCDF requires at least one sample")
    values, counts = np.unique(arr, return_counts=True)
    greater = arr.size - np.cumsum(counts)
    return CcdfSeries(_frozen(values), _frozen(greater / arr.size))


def community_sizes(p: Partition) -> np.ndarray:
    """Cardinality of each community (index = community id); sums to node count."""
    return np.bincount(p.labels, minlength=p.community_count)


@dataclass(frozen=True, eq=False)
class DensityMap:
    """Weak-tie counts keyed by the (source size, target size) community pair.

    Symmetric by construction: every weak tie contributes one count per
    orientation, so the total mass is twice the weak-tie count.
    """

    counts: dict[tuple[int, int], int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.counts.get(key, 0)


def _check_consistent(g: Graph, p: Partition, t: TieLabeling) -> None:
    if p.node_count != g.node_count:
        raise DataError(f"partition covers {p.node_count} vertices, graph has {g.node_count}")
    _check_labeling(g, t)


def density_map(g: Graph, p: Partition, t: TieLabeling) -> DensityMap:
    """Distribution of weak ties over endpoint community sizes."""
    _check_consistent(g, p, t)
    sizes = community_sizes(p)
    e = g.edges[t.weak]
    su = sizes[p.labels[e[:, 0]]]
    sv = sizes[p.labels[e[:, 1]]]
    a = np.concatenate([su, sv]).astype(np.int64)
    b = np.concatenate([sv, su]).astype(np.int64)
    if a.size == 0:
        return DensityMap({})
    span = int(sizes.max()) + 1
    key, counts = np.unique(a * span + b, return_counts=True)
    return DensityMap(
        {(int(k // span), int(k % span)): int(c) for k, c in zip(key.tolist(), counts.tolist())}
    )


def link_fraction_per_community(
    g: Graph, p: Partition, t: TieLabeling
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-community share of all weak ties incident to it.

    Returns (community_ids, sizes, fractions). Communities with no incident
    weak tie are omitted: their share is zero and they cannot appear on the
    log-log view this feeds, so fractions always lie in (0, 1].
    """
    _check_consistent(g, p, t)
    if t.weak_count == 0:
        raise DataError("link fraction is undefined without weak ties")
    e = g.edges[t.weak]
    ends = np.concatenate([p.labels[e[:, 0]], p.labels[e[:, 1]]])
    incident = np.bincount(ends, minlength=p.community_count)
    keep = incident > 0
    ids = np.nonzero(keep)[0]
    sizes = community_sizes(p)[keep]
    fractions = incident[keep] / t.weak_count
    return ids, sizes, fractions


def link_fraction(g: Graph, p: Partition, t: TieLabeling) -> list[tuple[int, float]]:
    """Mean incident-weak-tie share per community size, ascending by size."""
    _, sizes, fractions = link_fraction_per_community(g, p, t)
    out = []
    for s in np.unique(sizes):
        out.append((int(s), float(fractions[sizes == s].mean())))
    return out


def loglog_slope(xs, ys) -> tuple[float, float, float]:
    """Ordinary least squares on (ln x, ln y): returns (slope, intercept, r_squared).

    Requires at least two points with distinct x and strictly positive
    coordinates. A constant y fits exactly, so its r_squared is 1.
    """
    x = np.asarray(xs, dtype=float).ravel()
    y = np.asarray(ys, dtype=float).ravel()
    if x.shape != y.shape:
        raise DataError("x and y must have the same length")
    if x.size < 2 or np.unique(x).size < 2:
        raise DataError("log-log fit requires >= 2 points with distinct x")
    if (x <= 0).any() or (y <= 0).any():
        raise DataError("log-log fit requires positive coordinates")
    lx = np.log(x)
    ly = np.log(y)
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    ss_res = float((resid ** 2).sum())
    ss_tot = float(((ly - ly.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return float(slope), float(intercept), r2


def nmi(p1: Partition, p2: Partition) -> float:
    """Normalized mutual information with arithmetic-mean normalization.

    Symmetric, invariant under community relabeling, 1.0 for identical
    partitions, 0.0 for independent ones. Both partitions must cover the
    same vertex set.
    """
    if p1.node_count != p2.node_count:
        raise DataError("partitions cover different vertex sets")
    n = p1.node_count
    if n == 0:
        raise DataError("NMI is undefined on empty partitions")
    r2 = p2.community_count
    if p1.community_count == 1 and r2 == 1:
        return 1.0
    key, counts = np.unique(p1.labels * np.int64(r2) + p2.labels, return_counts=True)
    pij = counts / n
    pa = np.bincount(p1.labels, minlength=p1.community_count) / n
    pb = np.bincount(p2.labels, minlength=r2) / n
    mi = float((pij * np.log(pij / (pa[key // r2] * pb[key % r2]))).sum())
    ha = -float((pa[pa > 0] * np.log(pa[pa > 0])).sum())
    hb = -float((pb[pb > 0] * np.log(pb[pb > 0])).sum())
    denom = 0.5 * (ha + hb)
    if denom == 0.0:
        return 1.0
    return float(min(1.0, max(0.0, mi / denom)))


def _fmt(x) -> str:
    return format(float(x), ".12g")


def write_ccdf_csv(series: CcdfSeries, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(["x", "prob"])
        for x, pr in series.points:
            w.writerow([_fmt(x), _fmt(pr)])


def write_sizes_csv(sizes, path) -> None:
    """Histogram of community sizes: (size, count) rows ascending by size."""
    values, counts = np.unique(np.asarray(sizes, dtype=np.int64), return_counts=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(["size", "count"])
        for s, c in zip(values.tolist(), counts.tolist()):
            w.writerow([s, c])


def write_density_csv(dm: DensityMap, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(["s1", "s2", "count"])
        for (s1, s2), c in sorted(dm.counts.items()):
            w.writerow([s1, s2, c])


def write_link_fraction_csv(g: Graph, p: Partition, t: TieLabeling, path) -> None:
    """(size, mean_fraction, community_count) rows; the count backs the mean."""
    _, sizes, fractions = link_fraction_per_community(g, p, t)
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(["size", "mean_fraction", "community_count"])
        for s in np.unique(sizes).tolist():
            mask = sizes == s
            w.writerow([s, _fmt(fractions[mask].mean()), int(mask.sum())])


def write_link_fraction_communities_csv(g: Graph, p: Partition, t: TieLabeling, path) -> None:
    """Raw per-community table: (community, size, fraction) rows."""
    ids, sizes, fractions = link_fraction_per_community(g, p, t)
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(["community", "size", "fraction"])
        for i, s, fr in zip(ids.tolist(), sizes.tolist(), fractions.tolist()):
            w.writerow([i, s, _fmt(fr)])


def write_fit_csv(slope: float, intercept: float, r2: float, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(["slope", "intercept", "r2"])
        w.writerow([_fmt(slope), _fmt(intercept), _fmt(r2)])
