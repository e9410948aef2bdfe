"""Argument parsing helpers shared by the commands."""

import argparse
import contextlib
import sys
from pathlib import Path
from typing import Callable, Iterator, List, Optional, TextIO, TypeVar

T = TypeVar("T")


def list_of(cast: Callable[[str], T]) -> Callable[[str], List[T]]:
    """argparse type for comma-separated lists, e.g. "0.2,0.4"."""

    def parse(text: str) -> List[T]:
        try:
            return [cast(item.strip()) for item in text.split(",") if item.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid list {text!r}") from None

    return parse


@contextlib.contextmanager
def output_stream(path: Optional[str]) -> Iterator[TextIO]:
    """Open `path` for writing, or stdout for None and "-"."""
    if path is None or path == "-":
        yield sys.stdout
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", encoding="utf-8", newline="") as sink:
        yield sink
