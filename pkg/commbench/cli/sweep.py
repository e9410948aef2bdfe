"""`commbench sweep`: run an experiment grid and emit per-run and per-cell CSV."""

import argparse
import json
import logging
from typing import Any, Dict

from commbench.cli.middleware import EXIT_OK, EXIT_PARTIAL, command
from commbench.cli.options import list_of, output_stream
from commbench.config import settings
from commbench.schemas import SweepSpec, build_model
from commbench.services.io_service import write_report
from commbench.services.sweep_service import SweepService

logger = logging.getLogger(__name__)

# flag attribute -> SweepSpec field
_OVERRIDES = {
    "nodes": "nodes",
    "communities": "communities",
    "pt": "pt",
    "mu": "mu",
    "m": "m",
    "instances": "instances",
    "seed": "base_seed",
    "detectors": "detectors",
}


def register(subparsers: Any) -> None:
    parser = subparsers.add_parser(
        "sweep",
        help="Run a parameter grid",
        description="Default grid: N x sigma x Pt x mu = 3 x 4 x 5 x 4 cells, 5 instances each.",
    )
    parser.add_argument("--spec", help="JSON sweep spec; flags override its fields")
    parser.add_argument("--lite", action="store_true", help="Reduced grid for quick runs")
    parser.add_argument("--nodes", type=list_of(int), help="Comma-separated N values")
    parser.add_argument("--communities", type=list_of(int), help="Comma-separated sigma values")
    parser.add_argument("--pt", type=list_of(float), help="Comma-separated Pt values")
    parser.add_argument("--mu", type=list_of(float), help="Comma-separated mu values")
    parser.add_argument("--m", type=int, help="Edges per new node")
    parser.add_argument("--instances", type=int, help="Instances per cell")
    parser.add_argument("--seed", type=int, help="Base seed (default: env COMMBENCH_SEED)")
    parser.add_argument(
        "--detectors", type=list_of(str), help="Comma-separated detectors (default: all)"
    )
    parser.add_argument(
        "--jobs", type=int, default=settings.jobs, help="Parallel runs (default: %(default)s)"
    )
    parser.add_argument("--out", help="CSV file (default: stdout)")
    parser.set_defaults(handler=run)


def build_spec(args: argparse.Namespace) -> SweepSpec:
    data: Dict[str, Any] = {"base_seed": settings.seed}
    if args.spec:
        with open(args.spec, encoding="utf-8") as source:
            data.update(json.load(source))
    for flag, field in _OVERRIDES.items():
        value = getattr(args, flag)
        if value is not None:
            data[field] = value

    if args.lite:
        return SweepSpec.lite(**data)
    return build_model(SweepSpec, **data)


@command
def run(args: argparse.Namespace) -> int:
    spec = build_spec(args)
    result = SweepService(jobs=args.jobs).run(spec)

    with output_stream(args.out) as sink:
        write_report(result.rows, sink, "csv")

    if not result.ok:
        logger.error(f"{result.failed_runs} of {spec.total_runs} runs failed; see the error column")
        return EXIT_PARTIAL
    return EXIT_OK
