"""Experiment grid runner: generate, measure and detect for every (cell, instance)."""

import hashlib
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from statistics import fmean
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from commbench.config import settings
from commbench.schemas import GeneratorConfig, SweepSpec, build_model
from commbench.services.community_service import CommunityMetricsService, modularity, nmi
from commbench.services.detection_service import DetectionService
from commbench.services.network_generator import NetworkGeneratorService
from commbench.services.structural_service import StructuralMetricsService

logger = logging.getLogger(__name__)

SEED_MASK = (1 << 64) - 1

SWEEP_COLUMNS = [
    "cell",
    "instance",
    "aggregate",
    "seed",
    "N",
    "sigma",
    "pt",
    "mu",
    "m",
    "nodes",
    "edges",
    "edge_node_ratio",
    "apl",
    "cc_global",
    "cc_mean_local",
    "alpha",
    "gcc_fraction",
    "modularity",
    "inter_edge_fraction",
    "mean_separability",
    "infinite_separability",
    "mean_density",
    "mean_clustering",
    "mean_loyalty",
    "nmi_labelprop",
    "nmi_louvain",
    "triad_fallbacks",
    "class_fallbacks",
    "skipped_edges",
    "error",
]

# Identity columns copied verbatim into aggregate rows; the rest are averaged.
_KEY_COLUMNS = ("cell", "N", "sigma", "pt", "mu", "m")
_NON_NUMERIC = ("cell", "instance", "aggregate", "seed", "error")


def derive_seed(base_seed: int, cell: int, instance: int) -> int:
    """base_seed XOR a 64-bit hash of (cell, instance)."""
    digest = hashlib.blake2b(f"{cell}:{instance}".encode(), digest_size=8).digest()
    return (base_seed ^ int.from_bytes(digest, "big")) & SEED_MASK


class SweepTask(BaseModel):
    """One (cell, instance) run."""

    cell: int
    instance: int
    n: int
    sigma: int
    pt: float
    mu: float
    m: int
    seed: int
    detectors: List[str]


class SweepResult(BaseModel):
    rows: List[Dict[str, Any]] = Field(default_factory=list)
    failed_runs: int = 0

    @property
    def ok(self) -> bool:
        return self.failed_runs == 0


def run_task(task: SweepTask) -> Dict[str, Any]:
    """Measure one generated instance; failures become an error row."""
    row: Dict[str, Any] = {column: None for column in SWEEP_COLUMNS}
    row.update(
        cell=task.cell,
        instance=task.instance,
        aggregate=0,
        seed=task.seed,
        N=task.n,
        sigma=task.sigma,
        pt=task.pt,
        mu=task.mu,
        m=task.m,
        error="",
    )
    try:
        config = build_model(
            GeneratorConfig,
            n=task.n,
            sigma=task.sigma,
            pt=task.pt,
            mu=task.mu,
            m=task.m,
            seed=task.seed,
        )
        network = NetworkGeneratorService().generate(config)
        report = StructuralMetricsService().analyze(network.graph)
        summary = CommunityMetricsService().goodness_report(network).summary()
        row.update(report.model_dump(exclude={"xmin"}))
        row.update(summary.model_dump())
        row.update(
            modularity=modularity(network.graph, network.ground_truth),
            inter_edge_fraction=network.inter_community_edge_fraction(),
            triad_fallbacks=network.diagnostics.triad_fallbacks,
            class_fallbacks=network.diagnostics.class_fallbacks,
            skipped_edges=network.diagnostics.skipped_edges,
        )
        detection = DetectionService()
        for algorithm in task.detectors:
            result = detection.detect(network.graph, algorithm, config.seed)
            row[f"nmi_{algorithm}"] = nmi(network.ground_truth, result.partition)
    except Exception as e:
        logger.error(f"Run cell={task.cell} instance={task.instance} failed: {e}")
        row["error"] = f"{type(e).__name__}: {e}"
    return row


def aggregate_rows(rows: List[Dict[str, Any]]) -> Dict[str, Any]:
    """Per-cell mean over the instances that completed."""
    first = rows[0]
    done = [row for row in rows if not row["error"]]
    aggregate: Dict[str, Any] = {column: None for column in SWEEP_COLUMNS}
    aggregate.update({column: first[column] for column in _KEY_COLUMNS})
    aggregate.update(aggregate=1, error="")
    for column in SWEEP_COLUMNS:
        if column in _KEY_COLUMNS or column in _NON_NUMERIC:
            continue
        values = [row[column] for row in done if row[column] is not None]
        aggregate[column] = fmean(values) if values else None
    failures = len(rows) - len(done)
    if failures:
        aggregate["error"] = f"{failures} of {len(rows)} instances failed"
    return aggregate


class SweepService:
    """Runs a SweepSpec, optionally across worker processes."""

    def __init__(self, jobs: Optional[int] = None):
        self.jobs = jobs if jobs is not None else settings.jobs

    def tasks(self, spec: SweepSpec) -> List[SweepTask]:
        tasks = []
        for cell, (n, sigma, pt, mu) in enumerate(spec.cells()):
            for instance in range(spec.instances):
                tasks.append(
                    SweepTask(
                        cell=cell,
                        instance=instance,
                        n=n,
                        sigma=sigma,
                        pt=pt,
                        mu=mu,
                        m=spec.m,
                        seed=derive_seed(spec.base_seed, cell, instance),
                        detectors=spec.detectors,
                    )
                )
        return tasks

    def run(self, spec: SweepSpec) -> SweepResult:
        """Instance rows followed by one aggregate row per cell, in cell order."""
        start_time = time.time()
        tasks = self.tasks(spec)
        logger.info(
            f"Sweep: {spec.cell_count} cells x {spec.instances} instances "
            f"= {len(tasks)} runs on {self.jobs} job(s)"
        )

        # executor.map keeps task order, so rows line up with cells
        if self.jobs > 1:
            with ProcessPoolExecutor(max_workers=self.jobs) as executor:
                instance_rows = list(executor.map(run_task, tasks))
        else:
            instance_rows = [run_task(task) for task in tasks]

        # Per cell: its instance rows, then their aggregate
        result = SweepResult()
        for cell in range(spec.cell_count):
            cell_rows = instance_rows[cell * spec.instances : (cell + 1) * spec.instances]
            result.rows.extend(cell_rows)
            result.rows.append(aggregate_rows(cell_rows))
            result.failed_runs += sum(1 for row in cell_rows if row["error"])

        logger.info(
            f"Sweep finished in {time.time() - start_time:.1f}s "
            f"with {result.failed_runs} failed run(s)"
        )
        return result
