"""Multiplicity tables (ωβS_λ)^ρ: construction, file I/O, merging, validation.

A table only ever answers with a value it was given, a structural zero, or
``None`` for "unknown".  Unknown cells are never silently read as zero.

File format, one record per line (``#`` starts a comment)::

    mult <lambda> ; <rho> ; <value>
    phi <k> ; <lambda'> ; <rho'> ; <value>

``phi`` records are in the conjugated convention of the configuration-space
tables, Φ^k[λ', ρ'] = (ωβS_λ)^ρ with k = |λ| - |ρ|.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator

from .errors import ConflictError, InvariantError, MissingEntries, ParseError
from .partitions import (
    Partition,
    canonical_key,
    conjugate,
    from_text,
    generate_partitions,
    hook_family,
    size,
    to_text,
)

Cell = tuple[Partition, Partition]

BUILTIN = "builtin"
DATASET = "dataset"
FIXTURE = "fixture"
DERIVED = "derived"

DATA_ENV = "OUTEREXT_DATA"


@dataclass
class MultTable:
    """Known cells of (λ, ρ) -> (ωβS_λ)^ρ with a provenance tag per cell.

    Treat instances as frozen once built; engines share them read-only.
    """

    max_degree: int
    entries: dict[Cell, int] = field(default_factory=dict)
    provenance: dict[Cell, str] = field(default_factory=dict)

    def query(self, lam: Partition, rho: Partition) -> int | None:
        v = self.entries.get((lam, rho))
        if v is not None:
            return v
        if size(rho) > size(lam):
            return 0
        return None

    def known(self, lam: Partition, rho: Partition) -> bool:
        return self.query(lam, rho) is not None

    def missing_cells(self, max_degree: int | None = None) -> list[Cell]:
        """Unknown cells (λ, ρ) with |ρ| <= |λ| <= max_degree, canonical order."""
        top = self.max_degree if max_degree is None else max_degree
        return [
            (lam, rho)
            for m in range(top + 1)
            for lam in generate_partitions(m)
            for p in range(m + 1)
            for rho in generate_partitions(p)
            if not self.known(lam, rho)
        ]

    def is_complete(self, max_degree: int | None = None) -> bool:
        return not self.missing_cells(max_degree)

    def require_complete(self, max_degree: int) -> None:
        missing = self.missing_cells(max_degree)
        if missing:
            raise MissingEntries(missing, f"multiplicity data incomplete through degree {max_degree}")

    def restricted(self, max_degree: int) -> MultTable:
        keep = {c: v for c, v in self.entries.items() if size(c[0]) <= max_degree}
        return MultTable(max_degree, keep, {c: self.provenance[c] for c in keep})

    def row(self, lam: Partition) -> dict[Partition, int | None]:
        return {rho: self.query(lam, rho) for p in range(size(lam) + 1) for rho in generate_partitions(p)}

    def sorted_cells(self) -> list[Cell]:
        return sorted(
            self.entries,
            key=lambda c: (size(c[0]), canonical_key(c[0]), -size(c[1]), canonical_key(c[1])),
        )


# -- structural knowledge ---------------------------------------------------

def forced_value(lam: Partition, rho: Partition) -> int | None:
    """Value of a cell implied by general theory alone, or ``None``."""
    n, p = size(lam), size(rho)
    if p > n:
        return 0
    if p == n:
        return int(lam == rho)
    if n >= 2 and p <= 1:
        return 0
    if n >= 4 and rho == (1, 1):
        return 0
    return None


def hook_row(m: int) -> dict[Partition, int]:
    members = set(hook_family(m))
    return {rho: int(rho in members) for p in range(m + 1) for rho in generate_partitions(p)}


def builtin_table(max_degree: int) -> MultTable:
    """Everything known without external data, through ``max_degree``.

    Diagonal and structural zeros, complete rows for |λ| <= 1, and complete
    rows for the columns λ = (1^m) from the hook closed form.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    entries: dict[Cell, int] = {}
    for m in range(max_degree + 1):
        for lam in generate_partitions(m):
            for p in range(m + 1):
                for rho in generate_partitions(p):
                    v = forced_value(lam, rho)
                    if v is not None:
                        entries[(lam, rho)] = v
        if m >= 1:
            col = (1,) * m
            for rho, v in hook_row(m).items():
                entries[(col, rho)] = v
    return MultTable(max_degree, entries, {c: BUILTIN for c in entries})


# -- records and parsing ------------------------------------------------------

@dataclass(frozen=True)
class DatasetRecord:
    """Φ^k[λ', ρ'] = value, in the conjugated convention."""

    degree_drop: int
    lambda_conj: Partition
    rho_conj: Partition
    value: int

    def check(self) -> None:
        if self.degree_drop != size(self.lambda_conj) - size(self.rho_conj) or self.degree_drop < 0:
            raise ParseError(
                f"phi record k={self.degree_drop} inconsistent with sizes "
                f"|{to_text(self.lambda_conj)}|={size(self.lambda_conj)}, "
                f"|{to_text(self.rho_conj)}|={size(self.rho_conj)}"
            )
        if self.value < 0:
            raise ParseError(f"negative multiplicity in phi record {self}")

    def to_line(self) -> str:
        return f"phi {self.degree_drop} ; {to_text(self.lambda_conj)} ; {to_text(self.rho_conj)} ; {self.value}"


def _fields(line: str, keyword: str, count: int, where: str) -> list[str]:
    body = line[len(keyword):].strip()
    parts = [x.strip() for x in body.split(";")]
    if len(parts) != count:
        raise ParseError(f"{where}: expected {count} fields after '{keyword}', got {len(parts)}")
    return parts


def _int(tok: str, where: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{where}: not an integer: {tok!r}") from None


def _partition(tok: str, where: str) -> Partition:
    try:
        return from_text(tok)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


def parse_lines(lines: Iterable[str], source: str = "<text>") -> tuple[dict[Cell, int], list[DatasetRecord]]:
    """Split a multiplicity file into direct ``mult`` cells and ``phi`` records."""
    direct: dict[Cell, int] = {}
    records: list[DatasetRecord] = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        keyword = line.split(None, 1)[0]
        if keyword == "mult":
            lam, rho, value = _fields(line, "mult", 3, where)
            cell = (_partition(lam, where), _partition(rho, where))
            v = _int(value, where)
            if v < 0:
                raise ParseError(f"{where}: negative multiplicity")
            if cell in direct and direct[cell] != v:
                raise ConflictError(f"{where}: cell {_cell(cell)} given twice with values {direct[cell]} and {v}")
            direct[cell] = v
        elif keyword == "phi":
            k, lam_c, rho_c, value = _fields(line, "phi", 4, where)
            rec = DatasetRecord(_int(k, where), _partition(lam_c, where), _partition(rho_c, where), _int(value, where))
            try:
                rec.check()
            except ParseError as exc:
                raise ParseError(f"{where}: {exc}") from None
            records.append(rec)
        else:
            raise ParseError(f"{where}: unknown record type {keyword!r}")
    return direct, records


def parse_raw_records(text: str, source: str = "<text>") -> list[DatasetRecord]:
    """Read conjugated records from a raw export.

    This is the single place to adapt when a differently shaped export of the
    configuration-space tables turns up; it currently accepts ``phi`` lines.
    """
    direct, records = parse_lines(text.splitlines(), source)
    if direct:
        raise ParseError(f"{source}: raw export should only contain phi records")
    return records


def translate_gh22(records: Iterable[DatasetRecord], provenance: str = DATASET) -> MultTable:
    """Turn Φ^k[λ', ρ'] records into a table fragment at (λ, ρ)."""
    entries: dict[Cell, int] = {}
    for rec in records:
        rec.check()
        cell = (conjugate(rec.lambda_conj), conjugate(rec.rho_conj))
        if cell in entries and entries[cell] != rec.value:
            raise ConflictError(f"conflicting records for {_cell(cell)}: {entries[cell]} vs {rec.value}")
        entries[cell] = rec.value
    top = max((size(c[0]) for c in entries), default=0)
    return MultTable(top, entries, {c: provenance for c in entries})


def table_to_records(t: MultTable) -> list[DatasetRecord]:
    return [
        DatasetRecord(size(lam) - size(rho), conjugate(lam), conjugate(rho), v)
        for lam, rho in t.sorted_cells()
        for v in [t.entries[(lam, rho)]]
    ]


def serialize_records(records: Iterable[DatasetRecord]) -> str:
    return "".join(r.to_line() + "\n" for r in records)


def serialize_table(t: MultTable, with_provenance: bool = True) -> str:
    out = []
    for cell in t.sorted_cells():
        lam, rho = cell
        line = f"mult {to_text(lam)} ; {to_text(rho)} ; {t.entries[cell]}"
        if with_provenance:
            line += f"  # {t.provenance.get(cell, '?')}"
        out.append(line)
    return "\n".join(out) + ("\n" if out else "")


def table_from_text(text: str, provenance: str = DATASET, source: str = "<text>") -> MultTable:
    direct, records = parse_lines(text.splitlines(), source)
    parts = [translate_gh22(records, provenance)] if records else []
    top = max((size(c[0]) for c in direct), default=0)
    parts.append(MultTable(top, dict(direct), {c: provenance for c in direct}))
    return merge(parts)


def load_table(path: str | os.PathLike, provenance: str = DATASET) -> MultTable:
    p = Path(path)
    return table_from_text(p.read_text(encoding="utf-8"), provenance, str(p))


def data_files(paths: Iterable[str | os.PathLike]) -> list[Path]:
    """Expand directories to their ``*.txt`` files, sorted for determinism."""
    out = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            out.extend(sorted(p.glob("*.txt")))
        elif p.exists():
            out.append(p)
        else:
            raise FileNotFoundError(f"data path does not exist: {p}")
    return out


def default_data_paths() -> list[str]:
    env = os.environ.get(DATA_ENV, "")
    return [x for x in env.split(os.pathsep) if x]


def packaged_fixture() -> MultTable:
    """Low-degree cells transcribed from the displayed Ext^1(a^2, a^3)."""
    text = resources.files("outerext").joinpath("data/low_degree.txt").read_text(encoding="utf-8")
    return table_from_text(text, FIXTURE, "low_degree.txt")


# -- merging and validation ----------------------------------------------------

def _cell(cell: Cell) -> str:
    return f"({to_text(cell[0])} ; {to_text(cell[1])})"


def merge(parts: Iterable[MultTable]) -> MultTable:
    """Union of fragments; overlapping cells must agree."""
    entries: dict[Cell, int] = {}
    prov: dict[Cell, str] = {}
    top = 0
    for part in parts:
        top = max(top, part.max_degree)
        for cell, v in part.entries.items():
            src = part.provenance.get(cell, "?")
            if cell in entries:
                if entries[cell] != v:
                    raise ConflictError(
                        f"cell {_cell(cell)}: {prov[cell]} says {entries[cell]}, {src} says {v}"
                    )
                continue
            entries[cell] = v
            prov[cell] = src
    return MultTable(top, entries, prov)


def invariant_violations(t: MultTable, outer: bool = True) -> list[str]:
    problems = []
    for (lam, rho), v in t.entries.items():
        where = _cell((lam, rho))
        if v < 0:
            problems.append(f"{where}: negative value {v}")
            continue
        if outer:
            expected = forced_value(lam, rho)
        else:
            n, p = size(lam), size(rho)
            expected = 0 if p > n else int(lam == rho) if p == n else None
        if expected is not None and v != expected:
            problems.append(f"{where}: value {v} but structure forces {expected} ({t.provenance.get((lam, rho), '?')})")
    return problems


def merge_and_validate(parts: Iterable[MultTable], outer: bool = True) -> MultTable:
    """Merge fragments and check every structural invariant of the result.

    With ``outer=False`` only the triangularity and diagonal constraints are
    enforced, which is what tables of (βS_λ)^ρ satisfy.
    """
    t = merge(parts)
    problems = invariant_violations(t, outer)
    if problems:
        raise InvariantError("; ".join(problems))
    return t


def load_all(paths: Iterable[str | os.PathLike] = (), max_degree: int = 0, with_fixture: bool = True) -> MultTable:
    """Builtin knowledge + packaged fixture + every data file, merged and validated."""
    parts = [builtin_table(max_degree)]
    if with_fixture:
        parts.append(packaged_fixture())
    parts.extend(load_table(p) for p in data_files(paths))
    t = merge_and_validate(parts)
    t.max_degree = max(t.max_degree, max_degree)
    return t


def dataset_cells(t: MultTable) -> Iterator[Cell]:
    return (c for c, src in t.provenance.items() if src == DATASET)


def query(t: MultTable, lam: Partition, rho: Partition) -> int | None:
    return t.query(lam, rho)
