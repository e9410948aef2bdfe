"""Community goodness metrics, modularity and normalized mutual information."""

import logging
import math
from typing import List, Tuple

import numpy as np

from commbench.exceptions import EmptyGraphError, PartitionMismatchError, UnknownCommunityError
from commbench.graph import Graph
from commbench.schemas import CommunityGoodness, GoodnessReport, LabeledNetwork, Partition

logger = logging.getLogger(__name__)


def _members(graph: Graph, partition: Partition, c: int) -> List[int]:
    if partition.node_count != graph.node_count:
        raise PartitionMismatchError(
            f"partition covers {partition.node_count} nodes, graph has {graph.node_count}"
        )
    if not 1 <= c <= partition.sigma:
        raise UnknownCommunityError(f"community {c} not in 1..{partition.sigma}")
    return [u for u, label in enumerate(partition.labels) if label == c]


def _edge_counts(graph: Graph, partition: Partition, members: List[int], c: int) -> Tuple[int, int]:
    """(internal edges, boundary edges) of a community, each edge counted once."""
    labels = partition.labels
    internal_ends = 0
    boundary = 0
    for u in members:
        for v in graph.neighbors(u):
            if labels[v] == c:
                internal_ends += 1
            else:
                boundary += 1
    return internal_ends // 2, boundary


def separability(graph: Graph, partition: Partition, c: int) -> float:
    """Internal over boundary edges; inf when nothing leaves the community."""
    members = _members(graph, partition, c)
    internal, boundary = _edge_counts(graph, partition, members, c)
    if boundary == 0:
        return math.inf
    return internal / boundary


def density(graph: Graph, partition: Partition, c: int) -> float:
    """Internal edges over the n_c(n_c-1)/2 possible; 0 for singletons."""
    members = _members(graph, partition, c)
    size = len(members)
    if size < 2:
        return 0.0
    internal, _ = _edge_counts(graph, partition, members, c)
    return internal / (size * (size - 1) / 2)


def community_clustering(
    graph: Graph, partition: Partition, c: int, induced: bool = True
) -> float:
    """Mean local clustering of the community's nodes.

    With ``induced`` the neighbourhoods are restricted to the community,
    otherwise local clustering is taken on the full graph.
    """
    members = _members(graph, partition, c)
    labels = partition.labels
    total = 0.0
    for u in members:
        if induced:
            nbrs = [v for v in graph.neighbors(u) if labels[v] == c]
        else:
            nbrs = list(graph.neighbors(u))
        k = len(nbrs)
        if k < 2:
            continue
        nbr_set = set(nbrs)
        links = sum(1 for v in nbrs for w in graph.neighbor_set(v) if w in nbr_set) // 2
        total += 2 * links / (k * (k - 1))
    return total / len(members)


def loyalty(graph: Graph, partition: Partition, c: int) -> float:
    """Mean over nodes of intra-community incident edges / degree."""
    members = _members(graph, partition, c)
    labels = partition.labels
    total = 0.0
    for u in members:
        nbrs = graph.neighbors(u)
        if nbrs:
            total += sum(1 for v in nbrs if labels[v] == c) / len(nbrs)
    return total / len(members)


def loyalty_ratio(graph: Graph, partition: Partition, c: int) -> float:
    """Ratio-of-sums loyalty: intra-community edge ends over total degree."""
    members = _members(graph, partition, c)
    labels = partition.labels
    intra = 0
    degree_sum = 0
    for u in members:
        nbrs = graph.neighbors(u)
        degree_sum += len(nbrs)
        intra += sum(1 for v in nbrs if labels[v] == c)
    return intra / degree_sum if degree_sum else 0.0


def modularity(graph: Graph, partition: Partition) -> float:
    """Newman modularity: sum over communities of e_c/m - (d_c/2m)^2."""
    if graph.edge_count == 0:
        raise EmptyGraphError("modularity is undefined for a graph with no edges")
    if partition.node_count != graph.node_count:
        raise PartitionMismatchError(
            f"partition covers {partition.node_count} nodes, graph has {graph.node_count}"
        )

    m = graph.edge_count
    labels = np.asarray(partition.labels, dtype=np.int64)
    src, dst = graph.pool.edge_arrays()
    same = labels[src] == labels[dst]
    k = partition.sigma + 1
    internal = np.bincount(labels[src][same], minlength=k).astype(float)
    degree_sums = np.bincount(labels, weights=graph.degrees().astype(float), minlength=k)
    return float((internal / m).sum() - ((degree_sums / (2 * m)) ** 2).sum())


def nmi(p1: Partition, p2: Partition) -> float:
    """Normalized mutual information 2 I / (H1 + H2), natural logs."""
    if p1.node_count != p2.node_count:
        raise PartitionMismatchError(
            f"partitions label different node sets ({p1.node_count} vs {p2.node_count} nodes)"
        )
    if p1.node_count == 0:
        raise PartitionMismatchError("cannot compare empty partitions")
    if p1.labels == p2.labels:
        return 1.0

    n = p1.node_count
    a = np.asarray(p1.labels, dtype=np.int64)
    b = np.asarray(p2.labels, dtype=np.int64)
    rows = np.bincount(a).astype(float)
    cols = np.bincount(b).astype(float)
    pairs, joint = np.unique(a * (p2.sigma + 1) + b, return_counts=True)
    joint = joint.astype(float)
    row_of = pairs // (p2.sigma + 1)
    col_of = pairs % (p2.sigma + 1)

    def entropy(counts: np.ndarray) -> float:
        p = counts[counts > 0] / n
        return float(-(p * np.log(p)).sum())

    h1, h2 = entropy(rows), entropy(cols)
    if h1 + h2 == 0.0:
        return 0.0
    mutual = float((joint / n * np.log(joint * n / (rows[row_of] * cols[col_of]))).sum())
    return min(1.0, max(0.0, 2.0 * mutual / (h1 + h2)))


class CommunityMetricsService:
    """Per-community goodness reports."""

    def evaluate(self, graph: Graph, partition: Partition) -> GoodnessReport:
        """All goodness metrics for every community of the partition."""
        records = []
        for c, members in partition.communities().items():
            internal, boundary = _edge_counts(graph, partition, members, c)
            size = len(members)
            records.append(
                CommunityGoodness(
                    community=c,
                    size=size,
                    separability=internal / boundary if boundary else math.inf,
                    density=internal / (size * (size - 1) / 2) if size > 1 else 0.0,
                    clustering=community_clustering(graph, partition, c),
                    loyalty=loyalty(graph, partition, c),
                    loyalty_ratio=loyalty_ratio(graph, partition, c),
                )
            )
        return GoodnessReport(communities=records)

    def goodness_report(self, network: LabeledNetwork) -> GoodnessReport:
        return self.evaluate(network.graph, network.ground_truth)
