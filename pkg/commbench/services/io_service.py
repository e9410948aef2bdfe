"""Line-oriented text formats for graphs, partitions, configs and reports."""

import csv
import json
import logging
import math
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, TextIO, Tuple

from commbench.config import settings
from commbench.exceptions import CoverageError, ParseError
from commbench.graph import Graph
from commbench.schemas import GeneratorConfig, Partition, build_model

logger = logging.getLogger(__name__)

Record = Mapping[str, Any]


def _parse_pair(line: str, line_number: int) -> Optional[Tuple[int, int]]:
    """Two non-negative integers, or None for blank and comment lines."""
    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return None
    tokens = stripped.split()
    if len(tokens) != 2:
        raise ParseError(f"expected 2 fields, found {len(tokens)}: {stripped!r}", line_number)
    try:
        first, second = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise ParseError(f"non-integer token in {stripped!r}", line_number) from None
    if first < 0 or second < 0:
        raise ParseError(f"negative id in {stripped!r}", line_number)
    return first, second


class EdgeListReader:
    """Reads "u v" edge lists.

    After ``read`` the reader exposes ``duplicate_count`` and, when
    compacting, ``id_mapping`` (original id -> dense id).
    """

    def __init__(self, compact: bool = False):
        self.compact = compact
        self.duplicate_count = 0
        self.id_mapping: Dict[int, int] = {}

    def read(self, source: TextIO) -> Graph:
        edges: List[Tuple[int, int]] = []
        self.duplicate_count = 0
        self.id_mapping = {}
        max_id = -1
        for line_number, line in enumerate(source, start=1):
            pair = _parse_pair(line, line_number)
            if pair is None:
                continue
            u, v = pair
            if u == v:
                raise ParseError(f"self-loop on node {u}", line_number)
            if self.compact:
                u = self.id_mapping.setdefault(u, len(self.id_mapping))
                v = self.id_mapping.setdefault(v, len(self.id_mapping))
            edges.append((u, v))
            max_id = max(max_id, u, v)

        graph = Graph(max_id + 1)
        for u, v in edges:
            if not graph.add_edge(u, v):
                self.duplicate_count += 1

        if self.duplicate_count:
            logger.warning(f"Collapsed {self.duplicate_count} duplicate edge lines")
        return graph


def read_edge_list(source: TextIO, compact: bool = False) -> Graph:
    return EdgeListReader(compact=compact).read(source)


def write_edge_list(graph: Graph, sink: TextIO) -> None:
    """One "u v" line per edge, u < v, ascending."""
    for u, v in graph.edges():
        sink.write(f"{u} {v}\n")


def write_id_mapping(mapping: Mapping[int, int], sink: TextIO) -> None:
    """"original dense" lines, in dense order."""
    for original, dense in sorted(mapping.items(), key=lambda item: item[1]):
        sink.write(f"{original} {dense}\n")


class PartitionReader:
    """Reads "node community" files, densifying community ids.

    ``label_mapping`` holds original label -> dense label after ``read``.
    """

    def __init__(self) -> None:
        self.label_mapping: Dict[int, int] = {}

    def read(
        self,
        source: TextIO,
        node_count: int,
        id_mapping: Optional[Mapping[int, int]] = None,
    ) -> Partition:
        """Parse and verify coverage of 0..node_count-1.

        ``id_mapping`` translates original node ids (as produced by a
        compacting EdgeListReader) before the coverage check.
        """
        raw: Dict[int, int] = {}
        for line_number, line in enumerate(source, start=1):
            pair = _parse_pair(line, line_number)
            if pair is None:
                continue
            node, community = pair
            if id_mapping is not None:
                if node not in id_mapping:
                    raise CoverageError(f"line {line_number}: node {node} is not in the graph")
                node = id_mapping[node]
            if node >= node_count:
                raise CoverageError(
                    f"line {line_number}: node {node} outside graph of {node_count} nodes"
                )
            if node in raw:
                raise CoverageError(f"line {line_number}: node {node} listed twice")
            raw[node] = community

        missing = [u for u in range(node_count) if u not in raw]
        if missing:
            shown = ", ".join(str(u) for u in missing[:10])
            raise CoverageError(f"partition misses {len(missing)} node(s): {shown}")

        partition, self.label_mapping = Partition.from_labels(
            [raw[u] for u in range(node_count)], order="sorted"
        )
        return partition


def read_partition(
    source: TextIO, node_count: int, id_mapping: Optional[Mapping[int, int]] = None
) -> Partition:
    return PartitionReader().read(source, node_count, id_mapping)


def write_partition(partition: Partition, sink: TextIO) -> None:
    for node, label in enumerate(partition.labels):
        sink.write(f"{node} {label}\n")


def write_config(config: GeneratorConfig, sink: TextIO) -> None:
    """Provenance JSON in field order."""
    sink.write(config.model_dump_json(indent=2))
    sink.write("\n")


def read_config(source: TextIO) -> GeneratorConfig:
    return build_model(GeneratorConfig, **json.load(source))


def format_value(value: Any, precision: Optional[int] = None) -> str:
    """Fixed formatting: floats at `precision` significant digits, inf as "inf"."""
    precision = precision or settings.report_precision
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return format(value, f".{precision}g")
    return str(value)


def write_report(
    records: Sequence[Record], sink: TextIO, fmt: str = "kv", prefix: str = ""
) -> None:
    """Write report records as "key=value" lines or as CSV with a header.

    In kv mode records are written flat, or keyed as
    ``<prefix>.<position>.<field>`` when a prefix is given.
    """
    if fmt == "kv":
        for index, record in enumerate(records, start=1):
            key_prefix = f"{prefix}.{index}." if prefix else ""
            for key, value in record.items():
                sink.write(f"{key_prefix}{key}={format_value(value)}\n")
    elif fmt == "csv":
        if not records:
            return
        writer = csv.writer(sink, lineterminator="\n")
        columns = list(records[0].keys())
        writer.writerow(columns)
        for record in records:
            writer.writerow([format_value(record.get(column)) for column in columns])
    else:
        raise ValueError(f"unknown report format {fmt!r}; use 'kv' or 'csv'")


def model_records(models: Iterable[Any]) -> List[Dict[str, Any]]:
    """Pydantic models -> plain dicts, field order preserved."""
    return [model.model_dump() for model in models]
