"""Undirected simple graph with degree-proportional sampling."""

from typing import Iterable, Iterator, List, Sequence, Set, Tuple

import numpy as np
from scipy import sparse

from commbench.exceptions import EmptyGraphError, GraphError


class EndpointPool:
    """Flat list holding every node once per incident edge.

    Edge k occupies slots 2k and 2k+1, so the pool doubles as an edge log.
    A uniform draw from the pool is a degree-proportional draw over nodes.
    """

    __slots__ = ("endpoints",)

    def __init__(self) -> None:
        self.endpoints: List[int] = []

    def __len__(self) -> int:
        return len(self.endpoints)

    def record_edge(self, u: int, v: int) -> None:
        self.endpoints.append(u)
        self.endpoints.append(v)

    def edge_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        """Return the (sources, targets) arrays of the logged edges."""
        flat = np.asarray(self.endpoints, dtype=np.int64)
        return flat[0::2], flat[1::2]


def preferential_select(pool: EndpointPool, rng: np.random.Generator) -> int:
    """Pick a node with probability degree(u) / (2 * edge_count)."""
    if not pool.endpoints:
        raise EmptyGraphError("cannot sample preferentially from a graph with no edges")
    return pool.endpoints[int(rng.integers(len(pool.endpoints)))]


class Graph:
    """Undirected simple graph with dense integer node ids."""

    __slots__ = ("_adjacency", "_neighbor_sets", "_pool")

    def __init__(self, node_count: int = 0):
        if node_count < 0:
            raise GraphError(f"node_count must be non-negative, got {node_count}")
        self._adjacency: List[List[int]] = [[] for _ in range(node_count)]
        self._neighbor_sets: List[Set[int]] = [set() for _ in range(node_count)]
        self._pool = EndpointPool()

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        """Build a graph, silently dropping self-loops and duplicates."""
        graph = cls(node_count)
        for u, v in edges:
            graph.add_edge(u, v)
        return graph

    @property
    def node_count(self) -> int:
        return len(self._adjacency)

    @property
    def edge_count(self) -> int:
        return len(self._pool) // 2

    @property
    def pool(self) -> EndpointPool:
        return self._pool

    def add_node(self) -> int:
        """Append a node and return its id."""
        self._adjacency.append([])
        self._neighbor_sets.append(set())
        return len(self._adjacency) - 1

    def add_edge(self, u: int, v: int) -> bool:
        """Insert edge u-v; False for self-loops and existing edges."""
        self._check_node(u)
        self._check_node(v)
        if u == v or v in self._neighbor_sets[u]:
            return False
        self._adjacency[u].append(v)
        self._adjacency[v].append(u)
        self._neighbor_sets[u].add(v)
        self._neighbor_sets[v].add(u)
        self._pool.record_edge(u, v)
        return True

    def has_edge(self, u: int, v: int) -> bool:
        self._check_node(u)
        self._check_node(v)
        return v in self._neighbor_sets[u]

    def neighbors(self, u: int) -> Sequence[int]:
        """Neighbors of u in insertion order."""
        self._check_node(u)
        return self._adjacency[u]

    def neighbor_set(self, u: int) -> Set[int]:
        self._check_node(u)
        return self._neighbor_sets[u]

    def degree(self, u: int) -> int:
        self._check_node(u)
        return len(self._adjacency[u])

    def degrees(self) -> np.ndarray:
        return np.fromiter(
            (len(nbrs) for nbrs in self._adjacency), dtype=np.int64, count=self.node_count
        )

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Each edge once as (u, v) with u < v, in ascending order."""
        for u, nbrs in enumerate(self._adjacency):
            for v in sorted(nbrs):
                if u < v:
                    yield u, v

    def to_csr(self) -> sparse.csr_matrix:
        """Symmetric 0/1 adjacency matrix."""
        n = self.node_count
        src, dst = self._pool.edge_arrays()
        rows = np.concatenate([src, dst])
        cols = np.concatenate([dst, src])
        data = np.ones(rows.shape[0], dtype=np.int64)
        return sparse.csr_matrix((data, (rows, cols)), shape=(n, n))

    def _check_node(self, u: int) -> None:
        if not 0 <= u < len(self._adjacency):
            raise GraphError(f"node id {u} out of range [0, {len(self._adjacency)})")

    def __repr__(self) -> str:
        return f"Graph(node_count={self.node_count}, edge_count={self.edge_count})"
