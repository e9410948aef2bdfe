"""Tests for community goodness metrics, modularity and NMI."""

import math

import numpy as np
import pytest

from commbench.exceptions import EmptyGraphError, PartitionMismatchError, UnknownCommunityError
from commbench.graph import Graph
from commbench.schemas import Partition
from commbench.services.community_service import (
    CommunityMetricsService,
    community_clustering,
    density,
    loyalty,
    loyalty_ratio,
    modularity,
    nmi,
    separability,
)
from tests.conftest import make_graph, random_graph, random_partition


def pair_sum_modularity(graph: Graph, partition: Partition) -> float:
    m = graph.edge_count
    degrees = graph.degrees()
    labels = partition.labels
    total = 0.0
    for i in range(graph.node_count):
        for j in range(graph.node_count):
            if labels[i] == labels[j]:
                a_ij = 1.0 if graph.has_edge(i, j) else 0.0
                total += a_ij - degrees[i] * degrees[j] / (2 * m)
    return total / (2 * m)


def contingency_nmi(p1: Partition, p2: Partition) -> float:
    n = p1.node_count
    table = np.zeros((p1.sigma, p2.sigma))
    for a, b in zip(p1.labels, p2.labels):
        table[a - 1, b - 1] += 1
    rows, cols = table.sum(axis=1), table.sum(axis=0)
    h1 = -sum(r / n * math.log(r / n) for r in rows)
    h2 = -sum(c / n * math.log(c / n) for c in cols)
    mutual = 0.0
    for i in range(p1.sigma):
        for j in range(p2.sigma):
            if table[i, j]:
                mutual += table[i, j] / n * math.log(table[i, j] * n / (rows[i] * cols[j]))
    return 2 * mutual / (h1 + h2) if h1 + h2 else 0.0


def set_partitions(n: int):
    """Every partition of range(n) as restricted growth strings."""

    def extend(prefix):
        if len(prefix) == n:
            yield [label + 1 for label in prefix]
            return
        for label in range(max(prefix, default=-1) + 2):
            yield from extend(prefix + [label])

    yield from extend([])


def test_separability(two_triangles_bridge, triangles_partition, triangle):
    """Test separability."""
    assert separability(two_triangles_bridge, triangles_partition, 1) == 3.0
    assert separability(triangle, Partition(labels=[1, 1, 1]), 1) == math.inf


def test_separability_half():
    """Test separability half."""
    graph = make_graph(8, [(0, 1), (2, 3), (0, 4), (1, 5), (2, 6), (3, 7)])
    partition = Partition(labels=[1, 1, 1, 1, 2, 2, 2, 2])
    assert separability(graph, partition, 1) == 0.5


def test_density():
    """Test density."""
    triangle = make_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert density(triangle, Partition(labels=[1, 1, 1]), 1) == 1.0

    path = make_graph(4, [(0, 1), (1, 2), (2, 3)])
    assert density(path, Partition(labels=[1, 1, 1, 1]), 1) == 0.5
    assert density(path, Partition(labels=[1, 1, 1, 2]), 2) == 0.0


def test_community_clustering(triangle, path3):
    """Test community clustering."""
    assert community_clustering(triangle, Partition(labels=[1, 1, 1]), 1) == 1.0
    assert community_clustering(path3, Partition(labels=[1, 1, 1]), 1) == 0.0

    # missing edge (2, 3): nodes 0 and 1 score 2/3, nodes 2 and 3 score 1
    k4_minus_edge = make_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    assert community_clustering(
        k4_minus_edge, Partition(labels=[1, 1, 1, 1]), 1
    ) == pytest.approx(5 / 6)


def test_community_clustering_full_neighbourhood(two_triangles_bridge, triangles_partition):
    """Test community clustering full neighbourhood."""
    assert community_clustering(two_triangles_bridge, triangles_partition, 1) == 1.0
    assert community_clustering(
        two_triangles_bridge, triangles_partition, 1, induced=False
    ) == pytest.approx(7 / 9)


def test_loyalty(triangle):
    """Test loyalty."""
    assert loyalty(triangle, Partition(labels=[1, 1, 1]), 1) == 1.0

    graph = make_graph(3, [(0, 1), (1, 2)])
    assert loyalty(graph, Partition(labels=[1, 1, 2]), 1) == pytest.approx(0.75)

    # node 0 has two neighbours inside its community and one outside
    star = make_graph(4, [(0, 1), (0, 2), (0, 3)])
    assert loyalty(star, Partition(labels=[1, 2, 1, 1]), 1) == pytest.approx((2 / 3 + 1 + 1) / 3)


def test_loyalty_ratio(two_triangles_bridge, triangles_partition):
    """Test loyalty ratio."""
    assert loyalty_ratio(two_triangles_bridge, triangles_partition, 1) == pytest.approx(6 / 7)


def test_unknown_community_raises(two_triangles_bridge, triangles_partition):
    """Test unknown community raises."""
    for metric in (separability, density, community_clustering, loyalty, loyalty_ratio):
        with pytest.raises(UnknownCommunityError):
            metric(two_triangles_bridge, triangles_partition, 3)
        with pytest.raises(UnknownCommunityError):
            metric(two_triangles_bridge, triangles_partition, 0)


def test_partition_size_mismatch_raises(triangle, triangles_partition):
    """Test partition size mismatch raises."""
    with pytest.raises(PartitionMismatchError):
        density(triangle, triangles_partition, 1)
    with pytest.raises(PartitionMismatchError):
        modularity(triangle, triangles_partition)


def test_modularity_examples(two_triangles_bridge, triangles_partition, triangle):
    """Test modularity examples."""
    assert modularity(two_triangles_bridge, Partition(labels=[1] * 6)) == pytest.approx(0.0)
    assert modularity(two_triangles_bridge, triangles_partition) == pytest.approx(5 / 14)
    assert modularity(triangle, Partition(labels=[1, 2, 3])) == pytest.approx(-1 / 3)


def test_modularity_edgeless_graph_raises():
    """Test modularity edgeless graph raises."""
    with pytest.raises(EmptyGraphError):
        modularity(Graph(3), Partition(labels=[1, 1, 1]))


def test_modularity_matches_pair_sum(rng):
    """Test modularity matches pair sum."""
    checked = 0
    while checked < 50:
        graph = random_graph(rng, max_nodes=30, p=0.2)
        if graph.edge_count == 0:
            continue
        k = int(rng.integers(1, graph.node_count + 1))
        partition = random_partition(rng, graph.node_count, k)
        assert modularity(graph, partition) == pytest.approx(
            pair_sum_modularity(graph, partition), abs=1e-12
        )
        checked += 1


def test_triangles_partition_is_modularity_maximum(two_triangles_bridge):
    """Test triangles partition is modularity maximum."""
    best = max(
        modularity(two_triangles_bridge, Partition(labels=labels))
        for labels in set_partitions(6)
    )
    assert best == pytest.approx(5 / 14, abs=1e-12)


def test_nmi_examples(triangles_partition):
    """Test nmi examples."""
    assert nmi(triangles_partition, triangles_partition) == 1.0
    assert nmi(Partition(labels=[1] * 6), triangles_partition) == 0.0

    other = Partition(labels=[1, 1, 2, 2, 2, 2])
    assert nmi(triangles_partition, other) == pytest.approx(
        contingency_nmi(triangles_partition, other), abs=1e-12
    )


def test_nmi_matches_contingency_oracle(rng):
    """Test nmi matches contingency oracle."""
    for _ in range(50):
        n = int(rng.integers(2, 60))
        p1 = random_partition(rng, n, int(rng.integers(1, 8)))
        p2 = random_partition(rng, n, int(rng.integers(1, 8)))
        expected = 1.0 if p1.labels == p2.labels else contingency_nmi(p1, p2)
        assert nmi(p1, p2) == pytest.approx(expected, abs=1e-12)
        assert nmi(p1, p2) == pytest.approx(nmi(p2, p1), abs=1e-12)


def test_nmi_ignores_label_names(rng):
    """Test nmi ignores label names."""
    p1 = random_partition(rng, 40, 5)
    p2 = random_partition(rng, 40, 4)
    renamed, _ = Partition.from_labels([10 - label for label in p2.labels])
    assert nmi(p1, renamed) == pytest.approx(nmi(p1, p2), abs=1e-12)
    assert nmi(p2, renamed) == pytest.approx(1.0)


def test_nmi_mismatched_partitions_raise(triangles_partition):
    """Test nmi mismatched partitions raise."""
    with pytest.raises(PartitionMismatchError):
        nmi(triangles_partition, Partition(labels=[1, 1, 2]))
    with pytest.raises(PartitionMismatchError):
        nmi(Partition(labels=[]), Partition(labels=[]))


def test_evaluate_report(two_triangles_bridge, triangles_partition):
    """Test evaluate report."""
    report = CommunityMetricsService().evaluate(two_triangles_bridge, triangles_partition)
    assert [c.community for c in report.communities] == [1, 2]
    first = report.communities[0]
    assert first.size == 3
    assert first.separability == 3.0
    assert first.density == 1.0
    assert first.clustering == 1.0
    assert first.loyalty == pytest.approx((1 + 1 + 2 / 3) / 3)

    summary = report.summary()
    assert summary.mean_separability == 3.0
    assert summary.infinite_separability == 0
    assert summary.mean_density == 1.0


def test_goodness_without_mixing(make_network):
    """Test goodness without mixing."""
    network = make_network(n=300, sigma=5, mu=0.0)
    report = CommunityMetricsService().goodness_report(network)
    assert all(c.loyalty == 1.0 for c in report.communities)
    assert all(math.isinf(c.separability) for c in report.communities)

    summary = report.summary()
    assert summary.mean_separability is None
    assert summary.infinite_separability == 5
    assert summary.mean_loyalty == 1.0


def test_mixing_lowers_ground_truth_modularity(make_network):
    """Test mixing lowers ground truth modularity."""
    values = [
        modularity(network.graph, network.ground_truth)
        for network in (make_network(n=800, sigma=10, mu=mu, seed=3) for mu in (0.2, 0.8))
    ]
    assert values[0] > values[1]


def test_mixing_lowers_mean_loyalty(make_network):
    """Test mixing lowers mean loyalty."""
    service = CommunityMetricsService()
    means = [
        np.mean(
            [
                service.goodness_report(
                    make_network(n=1000, sigma=20, pt=0.5, mu=mu, seed=seed)
                ).summary().mean_loyalty
                for seed in range(5)
            ]
        )
        for mu in (0.2, 0.8)
    ]
    assert means[1] < means[0]
