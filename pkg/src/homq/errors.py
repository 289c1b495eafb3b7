"""Exception hierarchy shared by every homq module."""

from __future__ import annotations

from typing import Any


class HomqError(Exception):
    """Base class for all errors raised by homq."""


class GraphError(HomqError, ValueError):
    """Invalid graph construction or subset query."""


class SelfLoopError(GraphError):
    pass


class ParallelEdgeError(GraphError):
    pass


class VertexOutOfRangeError(GraphError):
    pass


class EmptySubsetError(GraphError):
    pass


class SubsetNotConnectedError(GraphError):
    pass


class RatioOutOfRangeError(HomqError, ValueError):
    """Evaluation point not strictly inside the zero-free disc."""


class NotNormalizedError(HomqError, ValueError):
    """Coefficient prefix does not start with a_0 = 1."""


class InstanceTooLargeError(HomqError):
    """A brute-force guard or an enumeration budget was exceeded."""


class OutsideZeroFreeRegionError(HomqError):
    """Parameters lie outside the certified zero-free region.

    ``report`` carries the :class:`~homq.regimes.RegimeReport` that
    triggered the rejection, when one is available.
    """

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


class RowWeightUnsupportedError(HomqError, ValueError):
    pass


class DuplicateEdgeRowError(HomqError, ValueError):
    pass


class AngleOutOfRangeError(HomqError, ValueError):
    pass


class DeltaOutOfRangeError(HomqError, ValueError):
    pass


class InstanceParseError(HomqError, ValueError):
    """Malformed instance document."""
