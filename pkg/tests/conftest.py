"""Test configuration and fixtures."""

from typing import Callable, Iterable, Tuple

import numpy as np
import pytest

from commbench.graph import Graph
from commbench.schemas import GeneratorConfig, LabeledNetwork, Partition
from commbench.services.network_generator import NetworkGeneratorService


def make_graph(node_count: int, edges: Iterable[Tuple[int, int]]) -> Graph:
    return Graph.from_edges(node_count, edges)


def random_graph(rng: np.random.Generator, max_nodes: int, p: float = 0.1) -> Graph:
    """Erdos-Renyi style graph with a random size in [2, max_nodes]."""
    n = int(rng.integers(2, max_nodes + 1))
    graph = Graph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                graph.add_edge(u, v)
    return graph


def random_partition(rng: np.random.Generator, n: int, k: int) -> Partition:
    partition, _ = Partition.from_labels([int(x) for x in rng.integers(0, k, size=n)])
    return partition


@pytest.fixture
def triangle() -> Graph:
    return make_graph(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def star() -> Graph:
    """Center 0 with three leaves."""
    return make_graph(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def path3() -> Graph:
    return make_graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def two_triangles_bridge() -> Graph:
    """Triangles {0,1,2} and {3,4,5} joined by the bridge 2-3."""
    return make_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])


@pytest.fixture
def triangles_partition() -> Partition:
    return Partition(labels=[1, 1, 1, 2, 2, 2])


@pytest.fixture
def ring_of_cliques() -> Graph:
    """Four K5 cliques joined in a ring by single edges."""
    graph = Graph(20)
    for block in range(4):
        members = range(5 * block, 5 * block + 5)
        for u in members:
            for v in members:
                if u < v:
                    graph.add_edge(u, v)
    for block in range(4):
        graph.add_edge(5 * block + 4, (5 * (block + 1)) % 20)
    return graph


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240607)


@pytest.fixture
def generator() -> NetworkGeneratorService:
    return NetworkGeneratorService()


@pytest.fixture
def make_network(generator: NetworkGeneratorService) -> Callable[..., LabeledNetwork]:
    """Factory generating a labelled network from keyword parameters."""

    def factory(**overrides: object) -> LabeledNetwork:
        params = {"n": 300, "sigma": 5, "pt": 0.5, "mu": 0.2, "m": 2, "seed": 7}
        params.update(overrides)
        return generator.generate(GeneratorConfig(**params))

    return factory
