"""Exact Ext computations between simple polynomial outer functors."""

from .errors import (
    BlockedCell,
    ConflictError,
    ContradictionError,
    InvariantError,
    MissingEntries,
    OuterExtError,
    ParseError,
)

__version__ = "0.1.0"

__all__ = [
    "BlockedCell",
    "ConflictError",
    "ContradictionError",
    "InvariantError",
    "MissingEntries",
    "OuterExtError",
    "ParseError",
]
