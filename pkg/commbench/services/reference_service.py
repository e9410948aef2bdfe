"""Comparison of generated networks against published real-world statistics."""

import logging
from pathlib import Path
from statistics import fmean
from typing import Any, Dict, List, Optional

from commbench.config import settings
from commbench.graph import Graph
from commbench.schemas import GeneratorConfig, ReferenceTables
from commbench.services.network_generator import NetworkGeneratorService
from commbench.services.structural_service import StructuralMetricsService
from commbench.services.sweep_service import derive_seed

logger = logging.getLogger(__name__)


class ReferenceService:
    """Loads the reference tables and reproduces the model-vs-real comparison."""

    def __init__(self, path: Optional[Path] = None):
        self.path = path or settings.reference_tables_path
        self._tables: Optional[ReferenceTables] = None

    def load(self) -> ReferenceTables:
        if self._tables is None:
            self._tables = ReferenceTables.model_validate_json(self.path.read_text())
            logger.debug(f"Loaded reference tables v{self._tables.version} from {self.path}")
        return self._tables

    def compare(self, seeds: int = 5, base_seed: Optional[int] = None) -> List[Dict[str, Any]]:
        """One row per (dataset, model).

        Measured means sit beside the values published for that model and beside
        the real network's own statistics.
        """
        tables = self.load()
        base_seed = settings.seed if base_seed is None else base_seed
        generator = NetworkGeneratorService()
        rows = []

        for index, params in enumerate(tables.proposed_parameters):
            graphs = [
                generator.generate(
                    GeneratorConfig(
                        n=params.nodes,
                        sigma=params.sigma,
                        pt=params.pt,
                        mu=params.mu,
                        m=params.m,
                        seed=derive_seed(base_seed, index, instance),
                    )
                ).graph
                for instance in range(seeds)
            ]
            rows.append(self._row(tables, params.dataset, "proposed", graphs))

        for index, hk in enumerate(tables.holme_kim_parameters):
            graphs = [
                generator.generate_holme_kim(
                    hk.nodes, hk.m, hk.pt, derive_seed(base_seed, 1000 + index, instance)
                )
                for instance in range(seeds)
            ]
            rows.append(self._row(tables, hk.dataset, "holme_kim", graphs))

        return rows

    def _row(
        self, tables: ReferenceTables, dataset: str, source: str, graphs: List[Graph]
    ) -> Dict[str, Any]:
        service = StructuralMetricsService()
        reports = [service.analyze(graph) for graph in graphs]
        published = tables.row(dataset, source)
        real = tables.row(dataset, "real")

        def mean_of(field: str) -> Optional[float]:
            values = [getattr(r, field) for r in reports if getattr(r, field) is not None]
            return fmean(values) if values else None

        def offset(value: Optional[float], target: float) -> Optional[float]:
            return value - target if value is not None else None

        def offset_pct(value: Optional[float], target: float) -> Optional[float]:
            return 100.0 * (value - target) / target if value is not None else None

        apl, cc, alpha = mean_of("apl"), mean_of("cc_global"), mean_of("alpha")
        edges = fmean(r.edges for r in reports)
        logger.info(f"{dataset} / {source}: edges={edges:.1f} apl={apl} cc={cc} alpha={alpha}")
        return {
            "dataset": dataset,
            "model": source,
            "nodes": published.nodes,
            "edges": edges,
            "edges_published": published.edges,
            "edges_real": real.edges,
            "apl": apl,
            "apl_published": published.apl,
            "apl_deviation_pct": offset_pct(apl, published.apl),
            "apl_real": real.apl,
            "apl_real_deviation_pct": offset_pct(apl, real.apl),
            "cc": cc,
            "cc_published": published.cc,
            "cc_deviation": offset(cc, published.cc),
            "cc_real": real.cc,
            "cc_real_deviation": offset(cc, real.cc),
            "alpha": alpha,
            "alpha_published": published.alpha,
            "alpha_deviation": offset(alpha, published.alpha),
            "alpha_real": real.alpha,
            "alpha_real_deviation": offset(alpha, real.alpha),
            "note": published.footnote or "",
        }
