"""`commbench detect`: run a reference detector and score it against a truth file."""

import argparse
import logging
from typing import Any, Dict

from commbench.cli.middleware import EXIT_OK, command
from commbench.cli.options import output_stream
from commbench.config import settings
from commbench.schemas import DETECTOR_NAMES
from commbench.services.community_service import nmi
from commbench.services.detection_service import DetectionService
from commbench.services.io_service import (
    EdgeListReader,
    read_partition,
    write_partition,
    write_report,
)

logger = logging.getLogger(__name__)


def register(subparsers: Any) -> None:
    parser = subparsers.add_parser("detect", help="Detect communities in an edge list")
    parser.add_argument("--graph", required=True, help="Edge list file")
    parser.add_argument("--algorithm", required=True, choices=DETECTOR_NAMES)
    parser.add_argument("--truth", help="Ground-truth partition file; prints NMI")
    parser.add_argument(
        "--seed",
        type=int,
        default=settings.seed,
        help="Detector seed (default: %(default)s, env COMMBENCH_SEED)",
    )
    parser.add_argument("--compact", action="store_true", help="Densify arbitrary node ids")
    parser.add_argument("--out", required=True, help="Detected partition file")
    parser.add_argument("--format", choices=("kv", "csv"), default="kv")
    parser.set_defaults(handler=run)


@command
def run(args: argparse.Namespace) -> int:
    reader = EdgeListReader(compact=args.compact)
    with open(args.graph, encoding="utf-8") as source:
        graph = reader.read(source)

    result = DetectionService().detect(graph, args.algorithm, args.seed)
    with output_stream(args.out) as sink:
        write_partition(result.partition, sink)

    summary: Dict[str, Any] = {
        "algorithm": result.algorithm,
        "communities": result.partition.sigma,
        "iterations": result.iterations,
        "modularity": result.modularity,
    }
    if args.truth:
        with open(args.truth, encoding="utf-8") as source:
            truth = read_partition(
                source, graph.node_count, reader.id_mapping if args.compact else None
            )
        summary["nmi"] = nmi(truth, result.partition)

    with output_stream(None) as sink:
        write_report([summary], sink, args.format)
    return EXIT_OK
