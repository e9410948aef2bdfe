"""Custom exceptions for commbench."""

from typing import Optional


class CommBenchException(Exception):
    """Base exception for commbench."""
    pass


class ValidationError(CommBenchException):
    """Raised when a configuration or parameter set is invalid."""
    pass


class GraphError(CommBenchException):
    """Raised on misuse of the graph structure, e.g. an out-of-range node id."""
    pass


class EmptyGraphError(GraphError):
    """Raised when an operation needs at least one edge."""
    pass


class MetricUndefinedError(CommBenchException):
    """Raised when a metric has no defined value for its input."""
    pass


class UnknownCommunityError(CommBenchException):
    """Raised when a community id is not present in the partition."""
    pass


class PartitionMismatchError(CommBenchException):
    """Raised when two partitions (or a partition and a graph) disagree on nodes."""
    pass


class ParseError(CommBenchException):
    """Raised when an input file line cannot be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class CoverageError(CommBenchException):
    """Raised when a partition file misses or repeats a node."""
    pass


class DetectionError(CommBenchException):
    """Raised when community detection cannot run."""
    pass
