"""`commbench analyze`: structural and community metrics of an edge list."""

import argparse
import logging
from typing import Any, Dict

from commbench.cli.middleware import EXIT_OK, command
from commbench.cli.options import output_stream
from commbench.services.community_service import CommunityMetricsService, modularity
from commbench.services.io_service import (
    EdgeListReader,
    model_records,
    read_partition,
    write_id_mapping,
    write_report,
)
from commbench.services.structural_service import StructuralMetricsService

logger = logging.getLogger(__name__)


def register(subparsers: Any) -> None:
    parser = subparsers.add_parser("analyze", help="Measure a graph (and a partition of it)")
    parser.add_argument("--graph", required=True, help="Edge list file")
    parser.add_argument("--partition", help="Partition file for goodness and modularity")
    parser.add_argument(
        "--compact",
        action="store_true",
        help="Map arbitrary non-negative node ids to dense ids (e.g. LFR output)",
    )
    parser.add_argument("--mapping-out", help="Where to write the id mapping when compacting")
    parser.add_argument("--format", choices=("kv", "csv"), default="kv")
    parser.add_argument("--out", help="Report file (default: stdout)")
    parser.set_defaults(handler=run)


@command
def run(args: argparse.Namespace) -> int:
    reader = EdgeListReader(compact=args.compact)
    with open(args.graph, encoding="utf-8") as source:
        graph = reader.read(source)
    if args.compact and args.mapping_out:
        with output_stream(args.mapping_out) as sink:
            write_id_mapping(reader.id_mapping, sink)

    record: Dict[str, Any] = StructuralMetricsService().analyze(graph).model_dump()
    goodness = None
    if args.partition:
        with open(args.partition, encoding="utf-8") as source:
            partition = read_partition(
                source, graph.node_count, reader.id_mapping if args.compact else None
            )
        record["modularity"] = modularity(graph, partition) if graph.edge_count else None
        goodness = CommunityMetricsService().evaluate(graph, partition)

    with output_stream(args.out) as sink:
        write_report([record], sink, args.format)
        if goodness is not None:
            if args.format == "csv":
                sink.write("\n")
                write_report(model_records(goodness.communities), sink, "csv")
            else:
                write_report(model_records(goodness.communities), sink, "kv", prefix="community")
    return EXIT_OK
