import numpy as np
import pytest

from weakties import DataError, Graph, build_graph, degree

from corpus import path, star, triangle
from oracles import random_graph


def test_self_loop_dropped_and_loop_only_vertex_excluded():
    g = build_graph([(0, 1), (1, 0), (2, 2)])
    assert g.node_count == 2
    assert g.edge_count == 1
    assert g.self_loops_dropped == 1
    assert g.duplicates_dropped == 1


def test_dense_remap_keeps_original_ids():
    g = build_graph([(5, 9), (9, 7)])
    assert g.node_count == 3
    assert g.edge_count == 2
    assert g.original_ids.tolist() == [5, 7, 9]


def test_path_degrees():
    g = path(4)
    assert [g.degree(v) for v in range(4)] == [1, 2, 2, 1]
    assert g.edge_count == 3


def test_degree_fixtures():
    assert all(triangle().degree(v) == 2 for v in range(3))
    assert star(5).degree(0) == 5
    g = Graph.from_edges(3, [(0, 1)])
    assert g.degree(2) == 0


def test_degree_out_of_range():
    g = triangle()
    with pytest.raises(DataError):
        g.degree(3)
    with pytest.raises(DataError):
        degree(g, -1)


def test_empty_edge_sequence_gives_empty_graph():
    g = build_graph([])
    assert g.node_count == 0
    assert g.edge_count == 0
    assert g.edges.shape == (0, 2)


def test_negative_ids_rejected():
    with pytest.raises(DataError):
        build_graph([(0, -1)])


def test_handshake_and_sorted_neighbors():
    rng = np.random.default_rng(11)
    for _ in range(30):
        n = int(rng.integers(2, 40))
        g = random_graph(rng, n, 0.2)
        assert int(g.degrees.sum()) == 2 * g.edge_count
        for v in range(n):
            nb = g.neighbors(v).tolist()
            assert nb == sorted(nb)
            assert v not in nb


def test_symmetry():
    rng = np.random.default_rng(5)
    g = random_graph(rng, 25, 0.15)
    for v in range(g.node_count):
        for u in g.neighbors(v).tolist():
            assert v in g.neighbors(u).tolist()


def test_build_idempotent():
    rng = np.random.default_rng(3)
    g = random_graph(rng, 30, 0.2)
    g2 = build_graph(g.edges)
    assert np.array_equal(g.indptr, g2.indptr)
    assert np.array_equal(g.indices, g2.indices)


def test_duplicates_collapsed_across_orientations():
    g = build_graph([(0, 1), (1, 0), (0, 1), (1, 2)])
    assert g.edge_count == 2
    assert g.duplicates_dropped == 2


def test_from_edges_keeps_isolated_vertices():
    g = Graph.from_edges(5, [(0, 1)])
    assert g.node_count == 5
    assert g.degrees.tolist() == [1, 1, 0, 0, 0]


def test_from_edges_rejects_out_of_range():
    with pytest.raises(DataError):
        Graph.from_edges(2, [(0, 2)])


def test_canonical_edge_enumeration_sorted():
    g = build_graph([(3, 1), (2, 0), (1, 0)])
    e = g.edges
    assert (e[:, 0] < e[:, 1]).all()
    keys = [tuple(row) for row in e.tolist()]
    assert keys == sorted(keys)


def test_arrays_are_read_only():
    g = triangle()
    with pytest.raises(ValueError):
        g.indices[0] = 99
