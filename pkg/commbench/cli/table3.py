"""`commbench table3`: reproduce the real-world comparison table."""

import argparse
import logging
from typing import Any

from commbench.cli.middleware import EXIT_OK, command
from commbench.cli.options import output_stream
from commbench.config import settings
from commbench.services.io_service import write_report
from commbench.services.reference_service import ReferenceService

logger = logging.getLogger(__name__)


def register(subparsers: Any) -> None:
    parser = subparsers.add_parser(
        "table3",
        help="Compare generated networks with published real-world statistics",
    )
    parser.add_argument("--seeds", type=int, default=5, help="Instances per model (default: 5)")
    parser.add_argument(
        "--base-seed",
        type=int,
        default=settings.seed,
        help="Base seed (default: %(default)s, env COMMBENCH_SEED)",
    )
    parser.add_argument("--format", choices=("kv", "csv"), default="csv")
    parser.add_argument("--out", help="Output file (default: stdout)")
    parser.set_defaults(handler=run)


@command
def run(args: argparse.Namespace) -> int:
    rows = ReferenceService().compare(seeds=args.seeds, base_seed=args.base_seed)
    with output_stream(args.out) as sink:
        write_report(rows, sink, args.format, prefix="row" if args.format == "kv" else "")
    return EXIT_OK
