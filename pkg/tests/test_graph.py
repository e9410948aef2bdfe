"""Tests for the graph core."""

from collections import Counter

import numpy as np
import pytest
from scipy import stats

from commbench.exceptions import EmptyGraphError, GraphError
from commbench.graph import Graph, preferential_select
from tests.conftest import make_graph


def test_add_node_assigns_dense_ids():
    """Test add node assigns dense ids."""
    graph = Graph()
    assert graph.add_node() == 0
    assert graph.add_node() == 1

    graph = Graph(5)
    new = graph.add_node()
    assert new == 5
    assert graph.degree(new) == 0


def test_add_edge_rejects_self_loops_and_duplicates():
    """Test add edge rejects self loops and duplicates."""
    graph = Graph(2)
    assert graph.add_edge(0, 0) is False
    assert graph.add_edge(0, 1) is True
    assert graph.add_edge(0, 1) is False
    assert graph.add_edge(1, 0) is False
    assert graph.degree(0) == graph.degree(1) == 1
    assert graph.edge_count == 1


def test_add_edge_out_of_range_raises():
    """Test add edge out of range raises."""
    graph = Graph(2)
    with pytest.raises(GraphError):
        graph.add_edge(0, 2)
    with pytest.raises(GraphError):
        graph.degree(-1)


def test_edges_are_listed_once_in_order(two_triangles_bridge):
    """Test edges are listed once in order."""
    assert list(two_triangles_bridge.edges()) == [
        (0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)
    ]


def test_random_operations_keep_graph_simple_and_pool_consistent(rng):
    """Test random operations keep graph simple and pool consistent."""
    graph = Graph()
    for _ in range(2000):
        if graph.node_count < 2 or rng.random() < 0.2:
            graph.add_node()
        else:
            u, v = (int(x) for x in rng.integers(graph.node_count, size=2))
            graph.add_edge(u, v)

    for u in range(graph.node_count):
        nbrs = graph.neighbors(u)
        assert u not in nbrs
        assert len(nbrs) == len(set(nbrs))
        for v in nbrs:
            assert u in graph.neighbor_set(v)
    assert graph.edge_count == int(graph.degrees().sum()) // 2
    pool_counts = Counter(graph.pool.endpoints)
    assert all(pool_counts[u] == graph.degree(u) for u in range(graph.node_count))
    assert len(graph.pool) == 2 * graph.edge_count


def test_preferential_select_empty_graph_raises():
    """Test preferential select empty graph raises."""
    graph = Graph(3)
    with pytest.raises(EmptyGraphError):
        preferential_select(graph.pool, np.random.default_rng(0))


def test_preferential_select_single_edge_is_symmetric():
    """Test preferential select single edge is symmetric."""
    graph = make_graph(2, [(0, 1)])
    rng = np.random.default_rng(1)
    draws = [preferential_select(graph.pool, rng) for _ in range(20000)]
    assert draws.count(0) / len(draws) == pytest.approx(0.5, abs=0.02)


def test_preferential_select_star_center_probability(star):
    """Test preferential select star center probability."""
    rng = np.random.default_rng(2)
    draws = np.array([preferential_select(star.pool, rng) for _ in range(100_000)])
    assert (draws == 0).mean() == pytest.approx(0.5, abs=0.01)
    for leaf in (1, 2, 3):
        assert (draws == leaf).mean() == pytest.approx(1 / 6, abs=0.01)


def test_preferential_select_matches_degree_distribution():
    """Test preferential select matches degree distribution."""
    source = np.random.default_rng(3)
    graph = Graph(20)
    for u in range(20):
        for v in range(u + 1, 20):
            if source.random() < 0.3:
                graph.add_edge(u, v)
    degrees = graph.degrees()
    active = degrees > 0

    rng = np.random.default_rng(4)
    draws = np.array([preferential_select(graph.pool, rng) for _ in range(100_000)])
    observed = np.bincount(draws, minlength=graph.node_count)[active]
    expected = degrees[active] / degrees.sum() * draws.size

    _, p_value = stats.chisquare(observed, expected)
    assert p_value > 0.01


def test_to_csr_is_symmetric(two_triangles_bridge):
    """Test to csr is symmetric."""
    matrix = two_triangles_bridge.to_csr()
    assert (matrix != matrix.T).nnz == 0
    assert matrix.sum() == 2 * two_triangles_bridge.edge_count
