import numpy as np
import pytest

from weakties import (
    DataError,
    Partition,
    classify_ties,
    planted_partition,
    tie_counts_per_node,
    tie_means_by_degree,
    tie_ratio,
    tipping_point,
)
from weakties.ties import read_labeling, write_labeling

from corpus import triangle, two_triangle_bridge
from oracles import random_graph

TRIANGLES = Partition.from_labels([0, 0, 0, 1, 1, 1])


def test_triangle_all_strong():
    t = classify_ties(triangle(), Partition.single_community(3))
    assert (t.strong_count, t.weak_count) == (3, 0)


def test_bridge_is_the_only_weak_tie():
    g = two_triangle_bridge()
    t = classify_ties(g, TRIANGLES)
    assert (t.strong_count, t.weak_count) == (6, 1)
    weak_edges = g.edges[t.weak]
    assert weak_edges.tolist() == [[2, 3]]


def test_disconnected_blocks_have_no_weak_ties():
    g, truth = planted_partition(40, 4, 0.5, 0.0, seed=1)
    t = classify_ties(g, truth)
    assert t.weak_count == 0


def test_partial_partition_rejected():
    with pytest.raises(DataError):
        classify_ties(two_triangle_bridge(), Partition.singletons(5))


def test_per_node_counts_bridge_graph():
    g = two_triangle_bridge()
    strong, weak = tie_counts_per_node(g, classify_ties(g, TRIANGLES))
    assert (strong[2], weak[2]) == (2, 1)
    assert (strong[0], weak[0]) == (2, 0)
    assert (strong + weak).tolist() == g.degrees.tolist()


def test_per_node_conservation():
    rng = np.random.default_rng(9)
    for _ in range(20):
        g = random_graph(rng, 25, 0.2)
        p = Partition.from_labels(rng.integers(0, 4, size=25))
        t = classify_ties(g, p)
        strong, weak = tie_counts_per_node(g, t)
        assert int(strong.sum()) == 2 * t.strong_count
        assert int(weak.sum()) == 2 * t.weak_count


def test_relabel_invariance():
    rng = np.random.default_rng(13)
    g = random_graph(rng, 30, 0.2)
    labels = rng.integers(0, 5, size=30)
    p = Partition.from_labels(labels)
    perm = rng.permutation(p.community_count)
    q = Partition.from_labels(perm[p.labels])
    assert np.array_equal(classify_ties(g, p).weak, classify_ties(g, q).weak)


def test_merge_all_and_split_all():
    rng = np.random.default_rng(15)
    g = random_graph(rng, 20, 0.3)
    n, m = g.node_count, g.edge_count
    assert classify_ties(g, Partition.single_community(n)).weak_count == 0
    assert classify_ties(g, Partition.singletons(n)).weak_count == m


def test_tie_ratio():
    g = two_triangle_bridge()
    t = classify_ties(g, TRIANGLES)
    wf, sf = tie_ratio(t)
    assert wf == pytest.approx(1 / 7)
    assert sf == pytest.approx(6 / 7)
    all_strong = classify_ties(g, Partition.single_community(6))
    assert tie_ratio(all_strong) == (0.0, 1.0)


def test_tie_ratio_rejects_empty():
    from weakties import TieLabeling

    with pytest.raises(DataError):
        tie_ratio(TieLabeling(np.zeros(0, dtype=bool)))


def _tipping_oracle(strong, weak):
    degrees = strong + weak
    for k in range(int(degrees.max()) + 1):
        mask = degrees > k
        if not mask.any():
            return None
        if weak[mask].mean() > strong[mask].mean():
            return k
    return None


def test_tipping_point_bridge_graph_none():
    g = two_triangle_bridge()
    strong, weak = tie_counts_per_node(g, classify_ties(g, TRIANGLES))
    assert tipping_point(strong, weak) is None


def test_tipping_point_strong_majority_none():
    strong = np.array([3, 3, 4, 5])
    weak = np.array([0, 1, 1, 2])
    assert tipping_point(strong, weak) is None


def test_tipping_point_simple_crossover():
    # degree 1 vertices are strong-heavy, higher degrees weak-heavy
    strong = np.array([1, 1, 1, 0, 1])
    weak = np.array([0, 0, 2, 3, 4])
    assert tipping_point(strong, weak) == _tipping_oracle(strong, weak)


def test_tipping_point_matches_oracle_randomized():
    rng = np.random.default_rng(21)
    for _ in range(200):
        n = int(rng.integers(1, 40))
        strong = rng.integers(0, 6, size=n)
        weak = rng.integers(0, 6, size=n)
        assert tipping_point(strong, weak) == _tipping_oracle(strong, weak)


def test_tipping_point_requires_vertices():
    with pytest.raises(DataError):
        tipping_point(np.zeros(0, dtype=int), np.zeros(0, dtype=int))


def test_tie_means_by_degree():
    g = two_triangle_bridge()
    rows = tie_means_by_degree(g, classify_ties(g, TRIANGLES))
    assert rows == [(2, 2.0, 0.0, 4), (3, 2.0, 1.0, 2)]


def test_labeling_round_trip(tmp_path):
    g = two_triangle_bridge()
    t = classify_ties(g, TRIANGLES)
    path = tmp_path / "t.labels"
    write_labeling(g, t, path)
    text = path.read_text()
    assert "2 3 W" in text
    t2 = read_labeling(g, path)
    assert np.array_equal(t.weak, t2.weak)


def test_read_labeling_rejects_mismatched_edges(tmp_path):
    g = two_triangle_bridge()
    path = tmp_path / "bad.labels"
    path.write_text("0 1 S\n")
    with pytest.raises(DataError):
        read_labeling(g, path)
