"""Exception hierarchy shared by the data and engine layers."""

from __future__ import annotations


class OuterExtError(Exception):
    """Base class; ``kind`` is the machine-readable tag the CLI prints."""

    kind = "error"


class ParseError(OuterExtError, ValueError):
    kind = "parse"


class ConflictError(OuterExtError, ValueError):
    kind = "conflict"


class InvariantError(OuterExtError, ValueError):
    kind = "invariant"


class MissingEntries(OuterExtError, LookupError):
    """Table cells that are needed but unknown."""

    kind = "coverage"

    def __init__(self, cells, detail: str = ""):
        self.cells = list(cells)
        shown = ", ".join(_cell_text(c) for c in self.cells[:5])
        more = f" (+{len(self.cells) - 5} more)" if len(self.cells) > 5 else ""
        super().__init__(f"unknown cell(s) {shown}{more}{': ' + detail if detail else ''}")


class BlockedCell(MissingEntries):
    """An Ext cell consumed by a complex is unavailable because of an earlier contradiction."""

    kind = "blocked"


class ContradictionError(OuterExtError, ArithmeticError):
    kind = "contradiction"

    def __init__(self, reports):
        self.reports = list(reports)
        super().__init__("; ".join(r.headline() for r in self.reports))


def _cell_text(cell) -> str:
    from .partitions import to_text

    return "[" + " ; ".join(to_text(x) if isinstance(x, tuple) else str(x) for x in cell) + "]"
