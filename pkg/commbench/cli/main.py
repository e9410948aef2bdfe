"""commbench command-line entry point."""

import argparse
import sys
from typing import List, Optional

from commbench.cli import analyze, detect, generate, sweep, table3
from commbench.cli.middleware import configure_logging
from commbench.config import settings


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="commbench",
        description="Benchmark graphs with ground-truth communities and their measurement",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.app_version}")
    parser.add_argument(
        "--log-level",
        default=settings.log_level,
        help="Logging level (default: %(default)s, env COMMBENCH_LOG_LEVEL)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    for module in (generate, analyze, detect, sweep, table3):
        module.register(subparsers)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    return int(args.handler(args))


if __name__ == "__main__":
    sys.exit(main())
