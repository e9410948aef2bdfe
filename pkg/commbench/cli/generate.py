"""`commbench generate`: write one labelled benchmark network."""

import argparse
import logging
from pathlib import Path
from typing import Any

from commbench.cli.middleware import EXIT_OK, command
from commbench.cli.options import output_stream
from commbench.config import settings
from commbench.schemas import GeneratorConfig, build_model
from commbench.services.io_service import write_config, write_edge_list, write_partition
from commbench.services.network_generator import NetworkGeneratorService

logger = logging.getLogger(__name__)


def register(subparsers: Any) -> None:
    parser = subparsers.add_parser(
        "generate",
        help="Generate a network with ground-truth communities",
        description=(
            "Writes PREFIX.edges, PREFIX.partition and PREFIX.config.json "
            "for the given parameters."
        ),
    )
    parser.add_argument("--nodes", type=int, required=True, help="Node count N")
    parser.add_argument("--communities", type=int, required=True, help="Community count")
    parser.add_argument("--pt", type=float, required=True, help="Triad formation probability")
    parser.add_argument("--mu", type=float, required=True, help="Mixing parameter")
    parser.add_argument("--m", type=int, default=2, help="Edges per new node (default: 2)")
    parser.add_argument(
        "--seed",
        type=int,
        default=settings.seed,
        help="RNG seed (default: %(default)s, env COMMBENCH_SEED)",
    )
    parser.add_argument("--out", required=True, help="Output path prefix")
    parser.set_defaults(handler=run)


@command
def run(args: argparse.Namespace) -> int:
    config = build_model(
        GeneratorConfig,
        n=args.nodes,
        sigma=args.communities,
        pt=args.pt,
        mu=args.mu,
        m=args.m,
        seed=args.seed,
    )
    network = NetworkGeneratorService().generate(config)

    prefix = Path(args.out)
    with output_stream(f"{prefix}.edges") as sink:
        write_edge_list(network.graph, sink)
    with output_stream(f"{prefix}.partition") as sink:
        write_partition(network.ground_truth, sink)
    with output_stream(f"{prefix}.config.json") as sink:
        write_config(config, sink)

    logger.info(
        f"Wrote {network.graph.node_count} nodes, {network.graph.edge_count} edges, "
        f"{network.ground_truth.sigma} communities to {prefix}.*"
    )
    return EXIT_OK
