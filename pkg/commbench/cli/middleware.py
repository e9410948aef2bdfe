"""Cross-cutting command handling: logging setup, timing and error mapping."""

import argparse
import functools
import logging
import sys
import time
from typing import Callable

from commbench.exceptions import CommBenchException, ValidationError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_PARTIAL = 3

Handler = Callable[[argparse.Namespace], int]


def configure_logging(level: str) -> None:
    """Configure the root logger once for the whole process."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def command(handler: Handler) -> Handler:
    """Log a command's start and duration and turn exceptions into exit codes."""

    @functools.wraps(handler)
    def wrapper(args: argparse.Namespace) -> int:
        start_time = time.time()
        logger.info(f"Command: {args.command}")
        try:
            exit_code = handler(args)
        except ValidationError as e:
            logger.error(f"Invalid parameters for {args.command}: {e}")
            return EXIT_USAGE
        except CommBenchException as e:
            logger.error(f"{args.command} failed: {e}")
            return EXIT_FAILURE
        except OSError as e:
            logger.error(f"{args.command} failed on I/O: {e}")
            return EXIT_FAILURE
        except Exception:
            logger.exception(f"Unhandled error in {args.command}")
            return EXIT_FAILURE

        logger.info(
            f"Finished {args.command} with exit code {exit_code} "
            f"in {time.time() - start_time:.2f}s"
        )
        return exit_code

    return wrapper
