"""Pydantic schemas for configs, partitions and reports."""

import math
from itertools import product
from typing import Any, Dict, Iterator, List, Optional, Tuple, Type, TypeVar

import pydantic
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from commbench.exceptions import ValidationError
from commbench.graph import Graph

ModelT = TypeVar("ModelT", bound=BaseModel)

DETECTOR_NAMES = ("labelprop", "louvain")


def format_validation_errors(exc: pydantic.ValidationError) -> str:
    """Flatten pydantic errors into one line listing every violated constraint."""
    parts = []
    for error in exc.errors():
        location = ".".join(str(item) for item in error["loc"])
        message = error["msg"].removeprefix("Value error, ")
        parts.append(f"{location}: {message}" if location else message)
    return "; ".join(parts)


def build_model(model_cls: Type[ModelT], **data: Any) -> ModelT:
    """Construct a model, re-raising pydantic failures as ValidationError."""
    try:
        return model_cls(**data)
    except pydantic.ValidationError as exc:
        raise ValidationError(
            f"invalid {model_cls.__name__}: {format_validation_errors(exc)}"
        ) from exc


class GeneratorConfig(BaseModel):
    """Parameters of one generated network."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., description="Target node count N")
    sigma: int = Field(..., description="Number of communities")
    pt: float = Field(..., description="Triad formation probability")
    mu: float = Field(..., description="Mixing parameter: share of inter-community edges")
    m: int = Field(2, description="Edges per new node")
    seed: int = Field(42, description="64-bit RNG seed")

    @model_validator(mode="after")
    def check_constraints(self) -> "GeneratorConfig":
        """Collect every violated constraint into a single error."""
        violations = []
        if self.sigma < 1:
            violations.append(f"sigma must be >= 1 (got {self.sigma})")
        if self.m < 1:
            violations.append(f"m must be >= 1 (got {self.m})")
        if not 0.0 <= self.pt <= 1.0:
            violations.append(f"pt must lie in [0, 1] (got {self.pt})")
        if not 0.0 <= self.mu <= 1.0:
            violations.append(f"mu must lie in [0, 1] (got {self.mu})")
        if self.n < 3 * self.sigma:
            violations.append(
                f"N must be >= 3 * sigma = {3 * self.sigma} (got N={self.n})"
            )
        if not 0 <= self.seed < 2**64:
            violations.append(f"seed must be a 64-bit unsigned integer (got {self.seed})")
        if violations:
            raise ValueError("; ".join(violations))
        return self


class Partition(BaseModel):
    """Node-to-community labelling with dense community ids 1..sigma."""

    labels: List[int] = Field(..., description="Community id of each node")

    @field_validator("labels")
    @classmethod
    def validate_dense(cls, v: List[int]) -> List[int]:
        """Community ids must be exactly 1..k with no gaps."""
        if v and set(v) != set(range(1, max(v) + 1)):
            raise ValueError("community ids must be dense 1..k with every community non-empty")
        return v

    @classmethod
    def from_labels(
        cls, raw: List[int], order: str = "sorted"
    ) -> Tuple["Partition", Dict[int, int]]:
        """Densify arbitrary labels; returns the partition and original->dense map.

        ``order="sorted"`` numbers communities by ascending original label,
        ``order="first_seen"`` by first appearance in node order.
        """
        if order == "sorted":
            distinct = sorted(set(raw))
        elif order == "first_seen":
            distinct = list(dict.fromkeys(raw))
        else:
            raise ValueError(f"unknown order {order!r}")
        mapping = {label: index for index, label in enumerate(distinct, start=1)}
        return cls(labels=[mapping[label] for label in raw]), mapping

    @property
    def node_count(self) -> int:
        return len(self.labels)

    @property
    def sigma(self) -> int:
        return max(self.labels, default=0)

    def communities(self) -> Dict[int, List[int]]:
        """Community id -> member nodes, ids ascending."""
        groups: Dict[int, List[int]] = {c: [] for c in range(1, self.sigma + 1)}
        for node, label in enumerate(self.labels):
            groups[label].append(node)
        return groups


class GenerationDiagnostics(BaseModel):
    """Counters describing how often generation had to bend its rules."""

    triad_fallbacks: int = Field(0, description="Triad restriction dropped, label class kept")
    class_fallbacks: int = Field(0, description="Label class dropped")
    skipped_edges: int = Field(0, description="Edges skipped after exhausting resamples")
    inter_edges_designated: int = Field(0, description="Edges designated inter-community")


class LabeledNetwork(BaseModel):
    """Generated graph with its ground-truth partition and provenance."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    graph: Graph
    ground_truth: Partition
    config: GeneratorConfig
    diagnostics: GenerationDiagnostics = Field(default_factory=GenerationDiagnostics)

    def inter_community_edge_fraction(self) -> float:
        if self.graph.edge_count == 0:
            return 0.0
        labels = self.ground_truth.labels
        inter = sum(1 for u, v in self.graph.edges() if labels[u] != labels[v])
        return inter / self.graph.edge_count


class DegreeDistribution(BaseModel):
    """Exact degree histogram."""

    histogram: Dict[int, int] = Field(..., description="degree -> node count")
    max_degree: int = Field(..., description="Largest degree present")

    def expand(self) -> List[int]:
        """One entry per node, ascending."""
        sample: List[int] = []
        for degree in sorted(self.histogram):
            sample.extend([degree] * self.histogram[degree])
        return sample


class PowerLawFit(BaseModel):
    """Discrete power-law fit of a degree tail."""

    alpha: float
    xmin: int
    ks_distance: float
    n_tail: int


class MetricsReport(BaseModel):
    """Whole-graph structural statistics."""

    nodes: int
    edges: int
    edge_node_ratio: float
    apl: Optional[float] = Field(None, description="Mean hop distance over reachable pairs")
    cc_global: float = Field(..., ge=0.0, le=1.0, description="Transitivity")
    cc_mean_local: float = Field(..., ge=0.0, le=1.0, description="Mean local clustering")
    alpha: Optional[float] = Field(None, description="Fitted power-law exponent")
    xmin: Optional[int] = Field(None, description="Lower bound of the fitted tail")
    gcc_fraction: float = Field(..., ge=0.0, le=1.0, description="Largest component share")


class CommunityGoodness(BaseModel):
    """Goodness metrics of a single community."""

    community: int
    size: int
    separability: float = Field(..., description="Internal/boundary edges; inf without boundary")
    density: float = Field(..., ge=0.0, le=1.0)
    clustering: float = Field(..., ge=0.0, le=1.0)
    loyalty: float = Field(..., ge=0.0, le=1.0)
    loyalty_ratio: float = Field(..., ge=0.0, le=1.0, description="Ratio-of-sums loyalty")


class GoodnessSummary(BaseModel):
    """Community-averaged goodness metrics."""

    mean_separability: Optional[float] = Field(None, description="Mean over finite values")
    infinite_separability: int = 0
    mean_density: float
    mean_clustering: float
    mean_loyalty: float


class GoodnessReport(BaseModel):
    """One goodness record per community, ids ascending."""

    communities: List[CommunityGoodness]

    def summary(self) -> GoodnessSummary:
        count = len(self.communities)
        finite = [c.separability for c in self.communities if math.isfinite(c.separability)]
        return GoodnessSummary(
            mean_separability=sum(finite) / len(finite) if finite else None,
            infinite_separability=count - len(finite),
            mean_density=sum(c.density for c in self.communities) / count,
            mean_clustering=sum(c.clustering for c in self.communities) / count,
            mean_loyalty=sum(c.loyalty for c in self.communities) / count,
        )


class DetectionResult(BaseModel):
    """Output of a community detector."""

    partition: Partition
    algorithm: str
    iterations: int = Field(..., description="Sweeps (label propagation) or levels (louvain)")
    modularity: float


class SweepSpec(BaseModel):
    """Cartesian experiment grid."""

    nodes: List[int] = Field(default_factory=lambda: [1000, 2000, 4000])
    communities: List[int] = Field(default_factory=lambda: [10, 20, 30, 40])
    pt: List[float] = Field(default_factory=lambda: [0.1, 0.3, 0.5, 0.7, 0.9])
    mu: List[float] = Field(default_factory=lambda: [0.2, 0.4, 0.6, 0.8])
    m: int = 2
    instances: int = Field(5, ge=1)
    base_seed: int = Field(42, ge=0, lt=2**64)
    detectors: List[str] = Field(default_factory=lambda: list(DETECTOR_NAMES))

    @field_validator("nodes", "communities", "pt", "mu")
    @classmethod
    def validate_non_empty(cls, v: List[Any]) -> List[Any]:
        if not v:
            raise ValueError("grid axis must list at least one value")
        return v

    @field_validator("detectors")
    @classmethod
    def validate_detectors(cls, v: List[str]) -> List[str]:
        unknown = [name for name in v if name not in DETECTOR_NAMES]
        if unknown:
            raise ValueError(f"unknown detectors {unknown}; choose from {list(DETECTOR_NAMES)}")
        return v

    @classmethod
    def lite(cls, **overrides: Any) -> "SweepSpec":
        """Reduced grid for quick runs."""
        data: Dict[str, Any] = {
            "nodes": [1000],
            "communities": [20],
            "pt": [0.1, 0.5, 0.9],
            "mu": [0.2, 0.4, 0.6, 0.8],
        }
        data.update(overrides)
        return build_model(cls, **data)

    def cells(self) -> Iterator[Tuple[int, int, float, float]]:
        """(N, sigma, pt, mu) in canonical order."""
        return product(self.nodes, self.communities, self.pt, self.mu)

    @property
    def cell_count(self) -> int:
        return len(self.nodes) * len(self.communities) * len(self.pt) * len(self.mu)

    @property
    def total_runs(self) -> int:
        return self.cell_count * self.instances


class HolmeKimParameters(BaseModel):
    dataset: str
    nodes: int
    pt: float
    m: int


class ProposedModelParameters(BaseModel):
    dataset: str
    nodes: int
    sigma: int
    pt: float
    mu: float
    m: int


class ReferenceRow(BaseModel):
    """Published statistics of a real network or a model built to match it."""

    dataset: str
    source: str = Field(..., description="'real', 'holme_kim' or 'proposed'")
    nodes: int
    edges: int
    edge_node_ratio: float
    apl: float
    cc: float
    alpha: float
    footnote: Optional[str] = None


class ReferenceTables(BaseModel):
    version: int
    holme_kim_parameters: List[HolmeKimParameters]
    proposed_parameters: List[ProposedModelParameters]
    rows: List[ReferenceRow]

    def row(self, dataset: str, source: str) -> ReferenceRow:
        for row in self.rows:
            if row.dataset == dataset and row.source == source:
                return row
        raise KeyError(f"no reference row for {dataset!r} / {source!r}")
