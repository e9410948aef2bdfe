"""Network generation: the triad-seeded community growth model and Holme-Kim."""

import logging
import time
from typing import Callable, List, Optional

import numpy as np

from commbench.config import settings
from commbench.exceptions import ValidationError
from commbench.graph import Graph, preferential_select
from commbench.schemas import (
    GenerationDiagnostics,
    GeneratorConfig,
    LabeledNetwork,
    Partition,
)

logger = logging.getLogger(__name__)

Eligibility = Callable[[int], bool]


def make_rng(seed: int) -> np.random.Generator:
    """64-bit seeded PCG64 generator."""
    return np.random.Generator(np.random.PCG64(seed))


class NetworkGeneratorService:
    """Grows labelled benchmark networks from seed triads."""

    def __init__(self, max_resample_attempts: Optional[int] = None):
        self.max_resample_attempts = (
            max_resample_attempts
            if max_resample_attempts is not None
            else settings.max_resample_attempts
        )

    def generate(self, config: GeneratorConfig) -> LabeledNetwork:
        """Setup triads, then grow until the network has N nodes."""
        start_time = time.time()
        rng = make_rng(config.seed)

        network = self.setup_triads(config, rng)
        # Growth: one node per step until N
        for _ in range(config.n - 3 * config.sigma):
            self.grow_step(network, config, rng)

        diagnostics = network.diagnostics
        elapsed = time.time() - start_time
        logger.debug(
            f"Generated N={config.n} sigma={config.sigma} pt={config.pt} mu={config.mu} "
            f"m={config.m} seed={config.seed}: {network.graph.edge_count} edges, "
            f"triad_fallbacks={diagnostics.triad_fallbacks} "
            f"class_fallbacks={diagnostics.class_fallbacks} in {elapsed:.3f}s"
        )
        if diagnostics.skipped_edges:
            logger.warning(
                f"Skipped {diagnostics.skipped_edges} edge placements "
                f"(seed={config.seed}) after {self.max_resample_attempts} resamples each"
            )
        return network

    def setup_triads(
        self, config: GeneratorConfig, rng: np.random.Generator
    ) -> LabeledNetwork:
        """One disjoint triangle per community; triangle k is labelled k."""
        graph = Graph()
        labels: List[int] = []
        for community in range(1, config.sigma + 1):
            a, b, c = graph.add_node(), graph.add_node(), graph.add_node()
            graph.add_edge(a, b)
            graph.add_edge(b, c)
            graph.add_edge(a, c)
            labels.extend([community] * 3)

        return LabeledNetwork(
            graph=graph,
            ground_truth=Partition(labels=labels),
            config=config,
            diagnostics=GenerationDiagnostics(),
        )

    def grow_step(
        self, network: LabeledNetwork, config: GeneratorConfig, rng: np.random.Generator
    ) -> None:
        """Add one node: an anchor edge, then m-1 triad/preferential edges."""
        graph = network.graph
        labels = network.ground_truth.labels
        diagnostics = network.diagnostics

        # Anchor by preferential attachment over the whole graph
        anchor = preferential_select(graph.pool, rng)
        node = graph.add_node()
        # The newcomer joins its anchor's community.
        labels.append(labels[anchor])
        graph.add_edge(node, anchor)

        # Each remaining edge: inter-community with prob mu, triad closure with prob pt
        for _ in range(config.m - 1):
            inter = bool(rng.random() < config.mu)
            triad = bool(rng.random() < config.pt)
            if inter:
                diagnostics.inter_edges_designated += 1

            partner = self._place_edge(
                graph, labels, node, anchor, inter, triad, diagnostics, rng
            )
            if partner is None:
                diagnostics.skipped_edges += 1
                continue
            graph.add_edge(node, partner)

    def generate_holme_kim(self, n: int, m: int, pt: float, seed: int) -> Graph:
        """Holme-Kim growth from an (m+1)-clique; no community labels."""
        violations = []
        if m < 1:
            violations.append(f"m must be >= 1 (got {m})")
        if n <= m:
            violations.append(f"N must exceed m (got N={n}, m={m})")
        if not 0.0 <= pt <= 1.0:
            violations.append(f"pt must lie in [0, 1] (got {pt})")
        if violations:
            raise ValidationError("invalid Holme-Kim parameters: " + "; ".join(violations))

        rng = make_rng(seed)
        graph = Graph(m + 1)
        for u in range(m + 1):
            for v in range(u + 1, m + 1):
                graph.add_edge(u, v)

        for _ in range(n - m - 1):
            node = graph.add_node()
            taken = graph.neighbor_set(node)

            def eligible(u: int) -> bool:
                return u != node and u not in taken

            anchor = self._preferential_in_class(graph, eligible, rng)
            if anchor is None:
                continue
            graph.add_edge(node, anchor)

            for _ in range(m - 1):
                partner = None
                if rng.random() < pt:
                    candidates = [u for u in graph.neighbors(anchor) if eligible(u)]
                    if candidates:
                        partner = candidates[int(rng.integers(len(candidates)))]
                if partner is None:
                    partner = self._preferential_in_class(graph, eligible, rng)
                    if partner is None:
                        break
                    anchor = partner
                graph.add_edge(node, partner)

        logger.debug(
            f"Generated Holme-Kim N={n} m={m} pt={pt} seed={seed}: {graph.edge_count} edges"
        )
        return graph

    def _place_edge(
        self,
        graph: Graph,
        labels: List[int],
        node: int,
        anchor: int,
        inter: bool,
        triad: bool,
        diagnostics: GenerationDiagnostics,
        rng: np.random.Generator,
    ) -> Optional[int]:
        """Choose a partner for one of the new node's edges, or None to skip it."""
        community = labels[node]
        taken = graph.neighbor_set(node)

        def free(u: int) -> bool:
            return u != node and u not in taken

        def eligible(u: int) -> bool:
            same = labels[u] == community
            return free(u) and same != inter

        if triad:
            candidates = [u for u in graph.neighbors(anchor) if eligible(u)]
            if candidates:
                return candidates[int(rng.integers(len(candidates)))]
            diagnostics.triad_fallbacks += 1

        # Triad closure impossible or not drawn: preferential within the class
        partner = self._preferential_in_class(graph, eligible, rng)
        if partner is not None:
            return partner

        # Class exhausted: any free node, preferentially
        diagnostics.class_fallbacks += 1
        for _ in range(self.max_resample_attempts):
            candidate = preferential_select(graph.pool, rng)
            if free(candidate):
                return candidate
        return None

    def _preferential_in_class(
        self, graph: Graph, eligible: Eligibility, rng: np.random.Generator
    ) -> Optional[int]:
        """Degree-proportional draw restricted to eligible nodes.

        Rejection-samples the endpoint pool first, then enumerates the class
        explicitly. Returns None when no eligible node has an edge.
        """
        for _ in range(self.max_resample_attempts):
            candidate = preferential_select(graph.pool, rng)
            if eligible(candidate):
                return candidate

        candidates = [u for u in range(graph.node_count) if eligible(u) and graph.degree(u) > 0]
        if not candidates:
            return None
        weights = np.cumsum([graph.degree(u) for u in candidates])
        index = int(np.searchsorted(weights, rng.random() * weights[-1], side="right"))
        return candidates[min(index, len(candidates) - 1)]
