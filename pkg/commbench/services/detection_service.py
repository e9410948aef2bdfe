"""Reference community detectors: label propagation and Louvain."""

import logging
import time
from collections import Counter, defaultdict
from typing import Dict, List, Optional, Tuple

import numpy as np

from commbench.config import settings
from commbench.exceptions import DetectionError
from commbench.graph import Graph
from commbench.schemas import DETECTOR_NAMES, DetectionResult, Partition
from commbench.services.community_service import modularity
from commbench.services.network_generator import make_rng

logger = logging.getLogger(__name__)


def _require_edges(graph: Graph, algorithm: str) -> None:
    if graph.node_count == 0 or graph.edge_count == 0:
        raise DetectionError(f"{algorithm} needs a graph with at least one edge")


class LabelPropagation:
    """Asynchronous label propagation with random sweep order and random tie-breaks."""

    name = "labelprop"

    def __init__(self, max_sweeps: Optional[int] = None):
        self.max_sweeps = max_sweeps if max_sweeps is not None else settings.lpa_max_sweeps

    def run(self, graph: Graph, seed: int) -> DetectionResult:
        _require_edges(graph, self.name)
        rng = make_rng(seed)
        labels = list(range(graph.node_count))
        order = np.arange(graph.node_count)

        sweeps = 0
        converged = False
        while sweeps < self.max_sweeps and not converged:
            sweeps += 1
            rng.shuffle(order)
            for u in order.tolist():
                dominant = self._dominant_labels(graph, labels, u)
                if dominant:
                    labels[u] = dominant[int(rng.integers(len(dominant)))]
            converged = all(
                labels[u] in self._dominant_labels(graph, labels, u)
                for u in range(graph.node_count)
                if graph.degree(u)
            )

        if not converged:
            logger.warning(f"Label propagation stopped after {sweeps} sweeps without converging")

        partition, _ = Partition.from_labels(labels, order="first_seen")
        return DetectionResult(
            partition=partition,
            algorithm=self.name,
            iterations=sweeps,
            modularity=modularity(graph, partition),
        )

    @staticmethod
    def _dominant_labels(graph: Graph, labels: List[int], u: int) -> List[int]:
        """Most frequent labels among u's neighbours, ascending."""
        counts = Counter(labels[v] for v in graph.neighbors(u))
        if not counts:
            return []
        top = max(counts.values())
        return sorted(label for label, count in counts.items() if count == top)


class Louvain:
    """Multilevel greedy modularity optimisation.

    Each level moves nodes to the neighbouring community with the largest
    positive gain until nothing moves, then collapses communities into
    super-nodes (self-loops keep their internal weight) and repeats.
    """

    name = "louvain"

    def __init__(self, max_levels: Optional[int] = None, min_gain: Optional[float] = None):
        self.max_levels = max_levels if max_levels is not None else settings.louvain_max_levels
        self.min_gain = min_gain if min_gain is not None else settings.louvain_min_gain
        self.levels: List[Partition] = []
        self.level_modularities: List[float] = []

    def run(self, graph: Graph, seed: int) -> DetectionResult:
        _require_edges(graph, self.name)
        rng = make_rng(seed)
        self.levels = []
        self.level_modularities = []

        # Symmetric weights; adjacency[c][c] holds twice the internal weight.
        adjacency: List[Dict[int, float]] = [
            {v: 1.0 for v in graph.neighbors(u)} for u in range(graph.node_count)
        ]
        total_weight = 2.0 * graph.edge_count
        node_to_super = list(range(graph.node_count))

        while len(self.levels) < self.max_levels:
            community, moved = self._local_moves(adjacency, total_weight, rng)
            if not moved:
                break
            dense, _ = Partition.from_labels(community, order="first_seen")
            node_to_super = [dense.labels[s] - 1 for s in node_to_super]
            adjacency = self._aggregate(adjacency, dense.labels)
            self.levels.append(Partition(labels=[s + 1 for s in node_to_super]))
            self.level_modularities.append(self._modularity(adjacency, total_weight))

        partition, _ = Partition.from_labels([s + 1 for s in node_to_super], order="first_seen")
        q = self.level_modularities[-1] if self.levels else modularity(graph, partition)
        return DetectionResult(
            partition=partition,
            algorithm=self.name,
            iterations=len(self.levels),
            modularity=q,
        )

    def _local_moves(
        self, adjacency: List[Dict[int, float]], total_weight: float, rng: np.random.Generator
    ) -> Tuple[List[int], bool]:
        n = len(adjacency)
        strengths = [sum(nbrs.values()) for nbrs in adjacency]
        community = list(range(n))
        community_total = list(strengths)
        order = rng.permutation(n).tolist()

        moved = False
        while True:
            moves = 0
            for i in order:
                k_i = strengths[i]
                current = community[i]
                links: Dict[int, float] = defaultdict(float)
                for j, weight in adjacency[i].items():
                    if j != i:
                        links[community[j]] += weight

                community_total[current] -= k_i
                best = current
                best_gain = links.get(current, 0.0) - community_total[current] * k_i / total_weight
                for c, weight in links.items():
                    gain = weight - community_total[c] * k_i / total_weight
                    if gain > best_gain + self.min_gain:
                        best, best_gain = c, gain
                community_total[best] += k_i
                if best != current:
                    community[i] = best
                    moves += 1
            if moves == 0:
                break
            moved = True
        return community, moved

    @staticmethod
    def _aggregate(adjacency: List[Dict[int, float]], labels: List[int]) -> List[Dict[int, float]]:
        size = max(labels)
        collapsed: List[Dict[int, float]] = [defaultdict(float) for _ in range(size)]
        for i, nbrs in enumerate(adjacency):
            ci = labels[i] - 1
            for j, weight in nbrs.items():
                collapsed[ci][labels[j] - 1] += weight
        return [dict(nbrs) for nbrs in collapsed]

    @staticmethod
    def _modularity(adjacency: List[Dict[int, float]], total_weight: float) -> float:
        """Q of the partition whose communities are the super-nodes."""
        q = 0.0
        for c, nbrs in enumerate(adjacency):
            strength = sum(nbrs.values())
            q += nbrs.get(c, 0.0) / total_weight - (strength / total_weight) ** 2
        return q


class DetectionService:
    """Dispatches detection runs by algorithm name."""

    def detect(self, graph: Graph, algorithm: str, seed: int) -> DetectionResult:
        start_time = time.time()
        if algorithm == "labelprop":
            result = LabelPropagation().run(graph, seed)
        elif algorithm == "louvain":
            result = Louvain().run(graph, seed)
        else:
            raise DetectionError(
                f"unknown algorithm {algorithm!r}; choose from {list(DETECTOR_NAMES)}"
            )
        logger.debug(
            f"{algorithm} found {result.partition.sigma} communities "
            f"(Q={result.modularity:.4f}) in {time.time() - start_time:.3f}s"
        )
        return result
