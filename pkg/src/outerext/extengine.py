"""Ext groups between simple polynomial outer functors via one-row complexes.

For simple functors indexed by ν ⊢ n and λ ⊢ m, the spectral sequence
built from the composition factors of the injective envelope of λ has E_1
terms sum_{ρ ⊢ p} mult(λ, ρ) · Ext^{p+q}(ν, ρ) and converges to zero when
ν != λ.  When everything is concentrated on the row q = -n it is an acyclic
complex whose last term is Ext^{m-n}(ν, λ), so that term is fixed by an Euler
characteristic.  A negative forced value is a certificate that concentration
fails somewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import BlockedCell, ContradictionError, InvariantError, MissingEntries, ParseError
from .multdata import DERIVED, MultTable
from .partitions import Partition, canonical_key, display, from_text, generate_partitions, size, to_text
from .repring import BiRep

ExtCell = tuple[Partition, Partition, int]

COMPUTED = "computed"
CONDITIONAL = "conditional"
FIXTURE = "fixture"
CONTRADICTION = "contradiction"
BLOCKED = "blocked"
FORCED = "forced-zero"

_UNAVAILABLE = {CONTRADICTION, BLOCKED}


def structural_ext(nu: Partition, lam: Partition, k: int) -> int | None:
    """Ext^k(ν, λ) when it is settled by degree reasons alone."""
    n, m = size(nu), size(lam)
    if k < 0 or k > m - n:
        return 0
    if k == 0:
        return int(nu == lam)
    if k == 1 and m != n + 1:
        return 0
    return None


@dataclass
class ExtTable:
    """Known values of dim Ext^k(αS_ν, αS_λ), keyed by (ν, λ, k).

    ``hypothesis_flag`` records that some values were obtained assuming
    concentration in degree |λ| - |ν|; those cells carry the status
    ``conditional``.
    """

    entries: dict[ExtCell, int] = field(default_factory=dict)
    status: dict[ExtCell, str] = field(default_factory=dict)
    hypothesis_flag: bool = False

    def query(self, nu: Partition, lam: Partition, k: int) -> int | None:
        cell = (nu, lam, k)
        if self.status.get(cell) in _UNAVAILABLE:
            return None
        if cell in self.entries:
            return self.entries[cell]
        return structural_ext(nu, lam, k)

    def status_of(self, nu: Partition, lam: Partition, k: int) -> str | None:
        cell = (nu, lam, k)
        if cell in self.status:
            return self.status[cell]
        return FORCED if structural_ext(nu, lam, k) is not None else None

    def put(self, nu: Partition, lam: Partition, k: int, value: int, status: str = COMPUTED) -> None:
        self.entries[(nu, lam, k)] = value
        self.status[(nu, lam, k)] = status

    def mark(self, nu: Partition, lam: Partition, k: int, status: str) -> None:
        self.entries.pop((nu, lam, k), None)
        self.status[(nu, lam, k)] = status

    def sorted_cells(self) -> list[ExtCell]:
        return sorted(
            self.status,
            key=lambda c: (size(c[1]), size(c[1]) - size(c[0]), canonical_key(c[0]), canonical_key(c[1]), c[2]),
        )

    def update(self, other: ExtTable) -> None:
        self.entries.update(other.entries)
        self.status.update(other.status)
        self.hypothesis_flag |= other.hypothesis_flag


def ext1_table(mult: MultTable, n: int) -> ExtTable:
    """Ext^1(ν, ρ) = mult(ρ, ν) for ν ⊢ n, ρ ⊢ n+1, wherever the table knows it."""
    t = ExtTable()
    for nu in generate_partitions(n):
        for rho in generate_partitions(n + 1):
            v = mult.query(rho, nu)
            if v is not None:
                t.put(nu, rho, 1, v)
    return t


# -- E1 support -----------------------------------------------------------------

@dataclass(frozen=True)
class E1Support:
    nu_size: int
    lambda_size: int
    region: frozenset[tuple[int, int]]

    def proven_zero(self, p: int, q: int) -> bool:
        """Cells of the region killed by the known values of Ext^0 and Ext^1."""
        n = self.nu_size
        t = p + q
        return (t == 0 and p != n) or (t == 1 and p != n + 1)

    def target_column(self) -> int:
        return self.lambda_size


def e1_support(nu: Partition | int, lam: Partition | int) -> E1Support:
    """Bidegrees (p, q) where the E_1 page may be nonzero.

    Only the sizes n = |ν|, m = |λ| matter (plain ints are accepted too):
    p ranges over max(n, min(2, m)) .. m and q over -p .. -n.
    """
    n = nu if isinstance(nu, int) else size(nu)
    m = lam if isinstance(lam, int) else size(lam)
    lo = max(n, min(2, m))
    region = frozenset((p, q) for p in range(lo, m + 1) for q in range(-p, -n + 1))
    return E1Support(n, m, region)


# -- row complexes ----------------------------------------------------------------

class Use(NamedTuple):
    """One summand mult(λ, ρ) · Ext^{p-n}(ν, ρ) of a row-complex term."""

    rho: Partition
    mult: int
    ext: int


@dataclass(frozen=True)
class RowComplex:
    nu: Partition
    lam: Partition
    terms: tuple  # ints for p = |ν| .. |λ|-1, then None for the unknown slot
    blame: tuple = ()  # per term: tuple[Use, ...]

    @property
    def start(self) -> int:
        return size(self.nu)

    def columns(self) -> range:
        return range(self.start, self.start + len(self.terms))

    def uses(self) -> Iterable[tuple[int, Use]]:
        for p, term in zip(self.columns(), self.blame):
            for use in term:
                yield p, use

    def terms_text(self) -> str:
        return " ".join("?" if t is None else str(t) for t in self.terms)


def build_row_complex(nu: Partition, lam: Partition, ext: ExtTable, mult: MultTable) -> RowComplex:
    """Row q = -|ν| of the E_1 page, with the Ext^{m-n}(ν, λ) slot left open.

    A summand whose multiplicity is a known zero is dropped even if the Ext
    factor is unknown, and vice versa.  Anything else unknown raises
    :class:`MissingEntries` (or :class:`BlockedCell` when the Ext cell is
    unavailable because of an earlier contradiction).
    """
    n, m = size(nu), size(lam)
    if m <= n:
        raise ValueError(f"row complex needs |λ| > |ν|, got {display(nu)}, {display(lam)}")
    terms: list[int | None] = []
    blame: list[tuple[Use, ...]] = []
    missing_mult, missing_ext, blocked = [], [], []
    for p in range(n, m):
        total = 0
        uses = []
        for rho in generate_partitions(p):
            a = mult.query(lam, rho)
            if a == 0:
                continue
            b = ext.query(nu, rho, p - n)
            if b == 0 and a is None:
                continue
            if a is None:
                missing_mult.append((lam, rho))
                continue
            if b is None:
                (blocked if ext.status.get((nu, rho, p - n)) in _UNAVAILABLE else missing_ext).append((nu, rho, p - n))
                continue
            total += a * b
            uses.append(Use(rho, a, b))
        terms.append(total)
        blame.append(tuple(uses))
    if missing_mult or missing_ext:
        raise MissingEntries(missing_mult + missing_ext, f"row complex for ν={display(nu)}, λ={display(lam)}")
    if blocked:
        raise BlockedCell(blocked, f"row complex for ν={display(nu)}, λ={display(lam)}")
    terms.append(None)
    blame.append(())
    return RowComplex(nu, lam, tuple(terms), tuple(blame))


# -- contradictions ------------------------------------------------------------------

@dataclass(frozen=True)
class ContradictionReport:
    nu: Partition
    lam: Partition
    term_dims: tuple
    forced_value: int
    blame_set: tuple[ExtCell, ...] = ()

    def __post_init__(self):
        if self.forced_value >= 0:
            raise ValueError("a contradiction needs a negative forced value")

    def headline(self) -> str:
        return f"no acyclic completion for ν={display(self.nu)}, λ={display(self.lam)} (forced value {self.forced_value})"

    def to_text(self) -> str:
        n = size(self.nu)
        lines = [
            f"contradiction nu={to_text(self.nu)} lambda={to_text(self.lam)}",
            f"  pair: Ext^{size(self.lam) - n}({display(self.nu)}, {display(self.lam)})",
            "  terms: " + " ".join(f"p={n + i}:{'?' if t is None else t}" for i, t in enumerate(self.term_dims)),
            f"  forced: {self.forced_value}",
            f"  blame-count: {len(self.blame_set)}",
        ]
        lines += [f"  blame: Ext^{k}({display(nu)}, {display(rho)})" for nu, rho, k in self.blame_set]
        return "\n".join(lines) + "\n"


def _sort_cells(cells: Iterable[ExtCell]) -> tuple[ExtCell, ...]:
    return tuple(sorted(set(cells), key=lambda c: (size(c[1]), canonical_key(c[0]), canonical_key(c[1]), c[2])))


def candidate_cells(c: RowComplex) -> set[ExtCell]:
    """Lower-row Ext cells that could receive a differential from this row.

    A class in column p of row -n can only die through d_r, r >= 2, landing
    on Ext^{p-n+1}(ν, ρ) with ρ a composition factor of size p + r.  Columns
    with a zero term carry no class; degrees 0 and 1 are settled.
    """
    n, m = size(c.nu), size(c.lam)
    factors = {c.lam} | {use.rho for _, use in c.uses()}
    out = set()
    for p, term in zip(c.columns(), c.terms):
        if not term:
            continue
        k = p - n + 1
        if k < 2:
            continue
        out.update((c.nu, rho, k) for rho in factors if size(rho) >= p + 2 and size(rho) <= m)
    return out


def solve_acyclic(c: RowComplex) -> int | ContradictionReport:
    """Value of the open slot making the alternating sum vanish.

    Returns the (nonnegative) value, or a :class:`ContradictionReport` when
    the only value consistent with acyclicity is negative.
    """
    if not c.terms or c.terms[-1] is not None or any(t is None or t < 0 for t in c.terms[:-1]):
        raise ValueError(f"malformed row complex: {c.terms!r}")
    last = len(c.terms) - 1
    forced = sum((-1) ** (last - i + 1) * t for i, t in enumerate(c.terms[:-1]))
    if forced < 0:
        return ContradictionReport(c.nu, c.lam, c.terms, forced, _sort_cells(candidate_cells(c)))
    return forced


def trace_blame(root: RowComplex, complexes: dict[tuple[Partition, Partition], RowComplex]) -> tuple[ExtCell, ...]:
    """Candidate cells of ``root`` and of every hypothesis-dependent value it consumed."""
    seen = set()
    stack = [root]
    cells: set[ExtCell] = set()
    while stack:
        c = stack.pop()
        cells |= candidate_cells(c)
        n = size(c.nu)
        for _, use in c.uses():
            if size(use.rho) - n < 3:
                continue  # degrees <= 2 do not depend on the hypothesis
            key = (c.nu, use.rho)
            if key not in seen and key in complexes:
                seen.add(key)
                stack.append(complexes[key])
    return _sort_cells(cells)


# -- recursions ---------------------------------------------------------------------------

def _value_status(degree: int) -> str:
    return COMPUTED if degree <= 2 else CONDITIONAL


def scan_koszul(
    max_degree: int, mult: MultTable, strict: bool = False
) -> tuple[ExtTable, list[ContradictionReport], dict[tuple[Partition, Partition], RowComplex]]:
    """:func:`run_koszul_recursion` that also hands back every row complex built."""
    ext = ExtTable(hypothesis_flag=True)
    reports: list[ContradictionReport] = []
    complexes: dict[tuple[Partition, Partition], RowComplex] = {}
    for m in range(1, max_degree + 1):
        for d in range(1, m + 1):
            for nu in generate_partitions(m - d):
                for lam in generate_partitions(m):
                    try:
                        c = build_row_complex(nu, lam, ext, mult)
                    except BlockedCell:
                        ext.mark(nu, lam, d, BLOCKED)
                        continue
                    complexes[(nu, lam)] = c
                    res = solve_acyclic(c)
                    if isinstance(res, ContradictionReport):
                        reports.append(
                            ContradictionReport(res.nu, res.lam, res.term_dims, res.forced_value, trace_blame(c, complexes))
                        )
                        ext.mark(nu, lam, d, CONTRADICTION)
                        if strict:
                            return ext, reports, complexes
                    else:
                        ext.put(nu, lam, d, res, _value_status(d))
    return ext, reports, complexes


def run_koszul_recursion(
    max_degree: int, mult: MultTable, strict: bool = False
) -> tuple[ExtTable, list[ContradictionReport]]:
    """Fill Ext^{m-n}(ν, λ) for |λ| <= max_degree assuming concentration.

    Pairs are visited by m, then m - n, then ν and λ in canonical order.  A
    contradiction is recorded and the scan continues; cells that would
    consume a contradicted value become ``blocked``.  ``strict`` stops at the
    first contradiction.
    """
    ext, reports, _ = scan_koszul(max_degree, mult, strict)
    return ext, reports


def invert_for_multiplicities(ext: ExtTable, max_degree: int) -> MultTable:
    """Recover mult(λ, ν) from concentrated Ext values.

    Main recursion on |λ|, secondary on |λ| - |ν|: in the row complex of
    (ν, λ) the only term not yet known is mult(λ, ν) in the first column.
    """
    entries: dict[tuple[Partition, Partition], int] = {}
    for m in range(max_degree + 1):
        for lam in generate_partitions(m):
            for rho in generate_partitions(m):
                entries[(lam, rho)] = int(lam == rho)
            for d in range(1, m + 1):
                n = m - d
                for nu in generate_partitions(n):
                    total = 0
                    for p in range(n + 1, m + 1):
                        for rho in generate_partitions(p):
                            a = entries[(lam, rho)]
                            if not a:
                                continue
                            b = ext.query(nu, rho, p - n)
                            if b is None:
                                raise MissingEntries([(nu, rho, p - n)], "Ext table incomplete or contradicted")
                            total += (-1) ** (p - n + 1) * a * b
                    if total < 0:
                        raise InvariantError(
                            f"inconsistent Ext data: negative multiplicity {total} for "
                            f"λ={display(lam)}, ρ={display(nu)}"
                        )
                    entries[(lam, nu)] = total
    return MultTable(max_degree, entries, {c: DERIVED for c in entries})


def compute_ext2_table(n: int, mult: MultTable) -> tuple[ExtTable, BiRep]:
    """Ext^2(a^{⊗ n-2}, a^{⊗ n}) cell by cell and assembled.

    Each cell is mult(λ,ν) -> sum_ρ mult(λ,ρ) mult(ρ,ν) -> Ext^2 read as an
    exact three-term complex; a negative result is a contradiction.
    """
    if n < 2:
        raise ValueError("Ext^2 between a^{n-2} and a^n needs n >= 2")
    ext1 = ext1_table(mult, n - 2)
    out = ExtTable()
    bad = []
    for nu in generate_partitions(n - 2):
        for lam in generate_partitions(n):
            res = solve_acyclic(build_row_complex(nu, lam, ext1, mult))
            if isinstance(res, ContradictionReport):
                bad.append(res)
            else:
                out.put(nu, lam, 2, res, COMPUTED)
    if bad:
        raise ContradictionError(bad)
    return out, assemble_equivariant(n - 2, n, out, 2)


def assemble_equivariant(n: int, m: int, ext: ExtTable, k: int) -> BiRep:
    """sum_{ν ⊢ n, λ ⊢ m} Ext^k(ν, λ) · (S_ν ⊠ S_λ)."""
    coeffs = {}
    missing = []
    for nu in generate_partitions(n):
        for lam in generate_partitions(m):
            v = ext.query(nu, lam, k)
            if v is None:
                missing.append((nu, lam, k))
            else:
                coeffs[(nu, lam)] = v
    if missing:
        raise MissingEntries(missing, f"Ext^{k} between levels {n} and {m}")
    return BiRep((n, m), coeffs)


# -- vanishing of Ext^*(a^{⊗2}, a^{⊗n}) ------------------------------------------------------------

@dataclass
class A2Report:
    verdicts: dict[int, str]  # n -> "vanishes" | "fails" | "incomplete"
    failures: list[str]
    unknown: list[tuple[Partition, Partition]]
    ext0: BiRep
    ext1: BiRep

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = [f"n={n}: {v}" for n, v in sorted(self.verdicts.items())]
        return out + [f"failure: {f}" for f in self.failures]


def verify_a2_vanishing(mult: MultTable, max_degree: int) -> A2Report:
    """Check the two multiplicity facts behind Ext^*(a^2, a^n) = 0 for n >= 4.

    For every λ ⊢ n: mult(λ, (1,1)) = 0 and mult(λ, (2)) = mult(λ, (1,1,1)).
    """
    verdicts: dict[int, str] = {}
    failures: list[str] = []
    unknown: list[tuple[Partition, Partition]] = []
    for n in range(4, max_degree + 1):
        verdict = "vanishes"
        for lam in generate_partitions(n):
            a = mult.query(lam, (1, 1))
            b, c = mult.query(lam, (2,)), mult.query(lam, (1, 1, 1))
            if a is None:
                unknown.append((lam, (1, 1)))
            elif a != 0:
                failures.append(f"mult({to_text(lam)} ; 1,1) = {a} != 0")
                verdict = "fails"
            if b is None or c is None:
                unknown.extend(cell for cell, v in [((lam, (2,)), b), ((lam, (1, 1, 1)), c)] if v is None)
            elif b != c:
                failures.append(f"mult({to_text(lam)} ; 2) = {b} != {c} = mult({to_text(lam)} ; 1,1,1)")
                verdict = "fails"
            if verdict == "vanishes" and (a is None or b is None or c is None):
                verdict = "incomplete"
        verdicts[n] = verdict
    ext0 = assemble_equivariant(2, 2, ExtTable(), 0)
    ext1 = assemble_equivariant(2, 3, ext1_table(mult, 2), 1)
    return A2Report(verdicts, failures, unknown, ext0, ext1)


# -- cache files -----------------------------------------------------------------------------

def serialize_ext(ext: ExtTable) -> str:
    lines = []
    for cell in ext.sorted_cells():
        nu, lam, k = cell
        v = ext.entries.get(cell)
        lines.append(f"ext {to_text(nu)} ; {to_text(lam)} ; {k} ; {'?' if v is None else v} ; {ext.status[cell]}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_ext(text: str, source: str = "<text>") -> ExtTable:
    ext = ExtTable()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        if not line.startswith("ext "):
            raise ParseError(f"{where}: expected an 'ext' record")
        fields = [x.strip() for x in line[4:].split(";")]
        if len(fields) != 5:
            raise ParseError(f"{where}: expected 5 fields, got {len(fields)}")
        try:
            nu, lam = from_text(fields[0]), from_text(fields[1])
            k = int(fields[2])
            value = None if fields[3] == "?" else int(fields[3])
        except ValueError as exc:
            raise ParseError(f"{where}: {exc}") from None
        status = fields[4]
        if status == CONDITIONAL:
            ext.hypothesis_flag = True
        if value is None:
            ext.mark(nu, lam, k, status)
        else:
            ext.put(nu, lam, k, value, status)
    return ext

