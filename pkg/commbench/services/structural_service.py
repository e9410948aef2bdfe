"""Whole-graph structural statistics: APL, clustering, degree distribution, power law."""

import logging
import time
from typing import Optional

import numpy as np
from scipy import special
from scipy.sparse import csgraph

from commbench.config import settings
from commbench.exceptions import MetricUndefinedError
from commbench.graph import Graph
from commbench.schemas import DegreeDistribution, MetricsReport, PowerLawFit

logger = logging.getLogger(__name__)


def average_path_length(graph: Graph, chunk_size: Optional[int] = None) -> float:
    """Mean hop distance over ordered reachable pairs (unreachable pairs excluded)."""
    if graph.node_count < 2 or graph.edge_count == 0:
        raise MetricUndefinedError("no reachable pairs")

    chunk_size = chunk_size or settings.apl_chunk_size
    adjacency = graph.to_csr()
    total = 0
    pairs = 0
    for start in range(0, graph.node_count, chunk_size):
        sources = np.arange(start, min(graph.node_count, start + chunk_size))
        distances = csgraph.shortest_path(
            adjacency, method="D", directed=False, unweighted=True, indices=sources
        )
        reachable = np.isfinite(distances) & (distances > 0)
        total += int(distances[reachable].sum())
        pairs += int(reachable.sum())

    return total / pairs


def _closed_walks(graph: Graph) -> np.ndarray:
    """Per node, twice the number of triangles through it."""
    adjacency = graph.to_csr()
    return np.asarray((adjacency @ adjacency).multiply(adjacency).sum(axis=1)).ravel()


def global_clustering_coefficient(graph: Graph) -> float:
    """Transitivity: 3 * triangles / connected triples; 0 without triples."""
    if graph.node_count == 0:
        return 0.0
    degrees = graph.degrees()
    triples = int((degrees * (degrees - 1) // 2).sum())
    if triples == 0:
        return 0.0
    triangles = int(_closed_walks(graph).sum()) // 6
    return 3 * triangles / triples


def mean_local_clustering(graph: Graph) -> float:
    """Average local clustering; nodes with degree < 2 count as 0."""
    if graph.node_count == 0:
        return 0.0
    degrees = graph.degrees()
    closed = _closed_walks(graph)
    possible = degrees * (degrees - 1)
    local = np.divide(
        closed, possible, out=np.zeros(graph.node_count, dtype=float), where=possible > 0
    )
    return float(local.mean())


def connected_components(graph: Graph) -> np.ndarray:
    """Component id per node."""
    _, labels = csgraph.connected_components(graph.to_csr(), directed=False)
    return labels


def largest_component_fraction(graph: Graph) -> float:
    if graph.node_count == 0:
        return 0.0
    sizes = np.bincount(connected_components(graph))
    return int(sizes.max()) / graph.node_count


def degree_distribution(graph: Graph) -> DegreeDistribution:
    """Exact degree histogram."""
    degrees = graph.degrees()
    if degrees.size == 0:
        return DegreeDistribution(histogram={}, max_degree=0)
    values, counts = np.unique(degrees, return_counts=True)
    return DegreeDistribution(
        histogram={int(d): int(c) for d, c in zip(values, counts)},
        max_degree=int(values[-1]),
    )


def _alpha_mle(tail: np.ndarray, xmin: int) -> float:
    return 1.0 + tail.size / float(np.log(tail / (xmin - 0.5)).sum())


def _ks_distance(tail: np.ndarray, xmin: int, alpha: float) -> float:
    """KS distance between the tail's empirical CDF and the discrete power law."""
    observed = np.unique(tail)
    # The empirical CDF is flat between observed values; check both edges of each step.
    points = np.union1d(observed, observed[1:] - 1)
    empirical = np.searchsorted(tail, points, side="right") / tail.size
    fitted = 1.0 - special.zeta(alpha, points + 1.0) / special.zeta(alpha, float(xmin))
    return float(np.abs(empirical - fitted).max())


def fit_power_law(
    dist: DegreeDistribution, xmin: Optional[int] = None, min_tail: Optional[int] = None
) -> PowerLawFit:
    """Discrete MLE fit; xmin is chosen by minimal KS distance when not given."""
    sample = np.sort(np.asarray(dist.expand(), dtype=float))
    sample = sample[sample >= 1]

    def fit_at(lower: int) -> PowerLawFit:
        tail = sample[sample >= lower]
        if np.unique(tail).size < 2:
            raise MetricUndefinedError("alpha undefined: fewer than two distinct degrees in tail")
        alpha = _alpha_mle(tail, lower)
        return PowerLawFit(
            alpha=alpha,
            xmin=lower,
            ks_distance=_ks_distance(tail, lower, alpha),
            n_tail=int(tail.size),
        )

    if xmin is not None:
        if xmin < 1:
            raise MetricUndefinedError(f"alpha undefined: xmin must be >= 1 (got {xmin})")
        return fit_at(xmin)

    distinct = np.unique(sample)
    if distinct.size < 2:
        raise MetricUndefinedError("alpha undefined: all degrees are equal")

    min_tail = min_tail if min_tail is not None else settings.powerlaw_min_tail
    candidates = distinct[:-1]
    tail_sizes = sample.size - np.searchsorted(sample, candidates, side="left")
    preferred = candidates[tail_sizes >= min_tail]
    if preferred.size:
        candidates = preferred

    best = min((fit_at(int(c)) for c in candidates), key=lambda fit: fit.ks_distance)
    return best


def fit_power_law_alpha(dist: DegreeDistribution, xmin: Optional[int] = None) -> float:
    return fit_power_law(dist, xmin).alpha


class StructuralMetricsService:
    """Bundles the structural statistics of a graph into a MetricsReport."""

    def analyze(self, graph: Graph) -> MetricsReport:
        start_time = time.time()

        try:
            apl: Optional[float] = average_path_length(graph)
        except MetricUndefinedError as e:
            logger.warning(f"APL unavailable: {e}")
            apl = None

        alpha: Optional[float] = None
        xmin: Optional[int] = None
        try:
            fit = fit_power_law(degree_distribution(graph))
            alpha, xmin = fit.alpha, fit.xmin
        except MetricUndefinedError as e:
            logger.warning(f"Power-law fit unavailable: {e}")

        report = MetricsReport(
            nodes=graph.node_count,
            edges=graph.edge_count,
            edge_node_ratio=graph.edge_count / graph.node_count if graph.node_count else 0.0,
            apl=apl,
            cc_global=global_clustering_coefficient(graph),
            cc_mean_local=mean_local_clustering(graph),
            alpha=alpha,
            xmin=xmin,
            gcc_fraction=largest_component_fraction(graph),
        )
        logger.debug(f"Analyzed {graph!r} in {time.time() - start_time:.3f}s")
        return report
