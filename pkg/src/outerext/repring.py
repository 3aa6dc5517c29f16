"""Representation rings of the symmetric groups, in exact arithmetic.

Elements of R(S_n) are :class:`VirtualRep` objects (integer combinations of
Specht modules), class functions carry exact rationals, and :class:`BiRep`
holds S_n x S_m-representations written in the basis S_nu ⊠ S_lambda.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .partitions import (
    Partition,
    canonical_key,
    centralizer_order,
    contains,
    display,
    from_text,
    generate_partitions,
    hook_dimension,
    remove_box_partitions,
    size,
    to_text,
)


class LevelMismatch(ValueError):
    pass


# -- Murnaghan–Nakayama -------------------------------------------------------

def _beta_set(p: Partition, length: int) -> tuple[int, ...]:
    padded = p + (0,) * (length - len(p))
    return tuple(x + length - 1 - i for i, x in enumerate(padded))


def _from_beta(beta: Iterable[int]) -> Partition:
    bs = sorted(beta, reverse=True)
    length = len(bs)
    return tuple(x for x in (b - (length - 1 - i) for i, b in enumerate(bs)) if x)


@lru_cache(maxsize=None)
def character_value(lam: Partition, mu: Partition) -> int:
    """chi_lam evaluated on the class of cycle type ``mu`` (``|lam| == |mu|``).

    Border strips are removed through the beta-set (abacus) description: a
    strip of length r is a bead moved from b to b - r onto an empty slot, with
    sign (-1)^(beads jumped over).
    """
    if size(lam) != size(mu):
        raise LevelMismatch(f"{lam} and {mu} have different sizes")
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    beta = _beta_set(lam, len(lam))
    occupied = set(beta)
    total = 0
    for b in beta:
        target = b - r
        if target < 0 or target in occupied:
            continue
        height = sum(1 for c in beta if target < c < b)
        moved = (occupied - {b}) | {target}
        total += (-1) ** height * character_value(_from_beta(moved), rest)
    return total


@dataclass(frozen=True)
class ClassFunction:
    level: int
    values: Mapping[Partition, Fraction]

    def __call__(self, mu: Partition) -> Fraction:
        return self.values.get(mu, Fraction(0))

    def __add__(self, other: ClassFunction) -> ClassFunction:
        _check_level(self.level, other.level)
        return ClassFunction(self.level, {mu: self(mu) + other(mu) for mu in generate_partitions(self.level)})

    def scale(self, c) -> ClassFunction:
        return ClassFunction(self.level, {mu: Fraction(c) * v for mu, v in self.values.items()})


def _check_level(a: int, b: int) -> None:
    if a != b:
        raise LevelMismatch(f"levels differ: {a} != {b}")


def character(lam: Partition) -> ClassFunction:
    n = size(lam)
    return ClassFunction(n, {mu: Fraction(character_value(lam, mu)) for mu in generate_partitions(n)})


def inner_product(f: ClassFunction, g: ClassFunction) -> Fraction:
    _check_level(f.level, g.level)
    return sum(
        (f(mu) * g(mu) / centralizer_order(mu) for mu in generate_partitions(f.level)),
        Fraction(0),
    )


# -- virtual representations ---------------------------------------------------

@dataclass(frozen=True)
class VirtualRep:
    """An element sum_lam c_lam [S_lam] of R(S_n); zero coefficients are dropped."""

    level: int
    coeffs: Mapping[Partition, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for lam, c in self.coeffs.items():
            if size(lam) != self.level:
                raise LevelMismatch(f"{lam} is not a partition of {self.level}")
            if c:
                clean[lam] = int(c)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items(), key=lambda kv: canonical_key(kv[0]))))

    @classmethod
    def irreducible(cls, lam: Partition) -> VirtualRep:
        return cls(size(lam), {lam: 1})

    def __getitem__(self, lam: Partition) -> int:
        return self.coeffs.get(lam, 0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VirtualRep):
            return NotImplemented
        return self.level == other.level and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.level, tuple(self.coeffs.items())))

    def __add__(self, other: VirtualRep) -> VirtualRep:
        _check_level(self.level, other.level)
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out.get(lam, 0) + c
        return VirtualRep(self.level, out)

    def __neg__(self) -> VirtualRep:
        return VirtualRep(self.level, {lam: -c for lam, c in self.coeffs.items()})

    def __sub__(self, other: VirtualRep) -> VirtualRep:
        return self + (-other)

    def __rmul__(self, k: int) -> VirtualRep:
        return VirtualRep(self.level, {lam: k * c for lam, c in self.coeffs.items()})

    def __mul__(self, other: VirtualRep) -> VirtualRep:
        return lr_product(self, other)

    def is_genuine(self) -> bool:
        return all(c > 0 for c in self.coeffs.values())

    def pairing(self, other: VirtualRep) -> int:
        """The form <u, w> = sum c_lam d_lam for which the S_lam are orthonormal."""
        _check_level(self.level, other.level)
        return sum(c * other[lam] for lam, c in self.coeffs.items())

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{to_text(lam)}" for lam, c in self.coeffs.items())

    @classmethod
    def from_text(cls, level: int, text: str) -> VirtualRep:
        text = text.strip()
        if text == "0":
            return cls(level)
        coeffs: dict[Partition, int] = {}
        for term in text.split("+"):
            c, _, lam = term.strip().partition("*")
            p = from_text(lam)
            coeffs[p] = coeffs.get(p, 0) + int(c)
        return cls(level, coeffs)

    def __str__(self) -> str:
        return self.to_text()


def class_function(v: VirtualRep) -> ClassFunction:
    values = {
        mu: Fraction(sum(c * character_value(lam, mu) for lam, c in v.coeffs.items()))
        for mu in generate_partitions(v.level)
    }
    return ClassFunction(v.level, values)


def decompose(f: ClassFunction) -> VirtualRep:
    """Expand a class function in the irreducible characters.

    Raises ``ValueError`` if some multiplicity is not an integer, which means
    ``f`` is not a virtual character.
    """
    coeffs = {}
    for lam in generate_partitions(f.level):
        m = inner_product(f, character(lam))
        if m.denominator != 1:
            raise ValueError(f"non-integral multiplicity {m} of {display(lam)}")
        coeffs[lam] = int(m)
    return VirtualRep(f.level, coeffs)


def dim(v: VirtualRep) -> int:
    return sum(c * hook_dimension(lam) for lam, c in v.coeffs.items())


def restrict(v: VirtualRep) -> VirtualRep:
    """Branching S_n -> S_{n-1}: remove one corner cell in every possible way."""
    if v.level < 1:
        raise ValueError("cannot restrict a representation of S_0")
    out: dict[Partition, int] = {}
    for lam, c in v.coeffs.items():
        for mu in remove_box_partitions(lam):
            out[mu] = out.get(mu, 0) + c
    return VirtualRep(v.level - 1, out)


# -- Littlewood–Richardson -----------------------------------------------------

@lru_cache(maxsize=None)
def lr_coefficient(lam: Partition, mu: Partition, nu: Partition) -> int:
    """Number of LR tableaux of skew shape lam/mu and content nu."""
    if size(lam) != size(mu) + size(nu) or not contains(lam, mu) or not contains(lam, nu):
        return 0
    # cells in reverse reading order: rows top to bottom, each right to left
    cells = [(i, j) for i in range(len(lam)) for j in range(lam[i] - 1, (mu[i] if i < len(mu) else 0) - 1, -1)]
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (len(nu) + 1)

    def fill(idx: int) -> int:
        if idx == len(cells):
            return 1
        i, j = cells[idx]
        hi = len(nu)
        right = filling.get((i, j + 1))
        if right is not None:
            hi = min(hi, right)
        lo = 1
        above = filling.get((i - 1, j))
        if above is not None:
            lo = above + 1
        found = 0
        for v in range(lo, hi + 1):
            if counts[v] >= nu[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            filling[(i, j)] = v
            found += fill(idx + 1)
            del filling[(i, j)]
            counts[v] -= 1
        return found

    return fill(0)


@lru_cache(maxsize=None)
def _lr_expand(mu: Partition, nu: Partition) -> tuple[tuple[Partition, int], ...]:
    n = size(mu) + size(nu)
    terms = []
    for lam in generate_partitions(n):
        c = lr_coefficient(lam, mu, nu)
        if c:
            terms.append((lam, c))
    return tuple(terms)


def lr_product(u: VirtualRep, v: VirtualRep) -> VirtualRep:
    """Induction product R(S_a) x R(S_b) -> R(S_{a+b})."""
    out: dict[Partition, int] = {}
    for mu, a in u.coeffs.items():
        for nu, b in v.coeffs.items():
            for lam, c in _lr_expand(mu, nu):
                out[lam] = out.get(lam, 0) + a * b * c
    return VirtualRep(u.level + v.level, out)


# -- bi-representations --------------------------------------------------------

@dataclass(frozen=True)
class BiRep:
    """sum c_{nu,lam} (S_nu ⊠ S_lam) as an S_n x S_m-representation."""

    levels: tuple[int, int]
    coeffs: Mapping[tuple[Partition, Partition], int] = field(default_factory=dict)

    def __post_init__(self):
        n, m = self.levels
        clean = {}
        for (nu, lam), c in self.coeffs.items():
            if size(nu) != n or size(lam) != m:
                raise LevelMismatch(f"({nu}, {lam}) does not live at levels {self.levels}")
            if c:
                clean[(nu, lam)] = int(c)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __getitem__(self, key: tuple[Partition, Partition]) -> int:
        return self.coeffs.get(key, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiRep):
            return NotImplemented
        return self.levels == other.levels and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.levels, tuple(self.coeffs.items())))

    def __add__(self, other: BiRep) -> BiRep:
        if self.levels != other.levels:
            raise LevelMismatch(f"levels differ: {self.levels} != {other.levels}")
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, 0) + c
        return BiRep(self.levels, out)

    def dim(self) -> int:
        return sum(c * hook_dimension(nu) * hook_dimension(lam) for (nu, lam), c in self.coeffs.items())

    def is_genuine(self) -> bool:
        return all(c > 0 for c in self.coeffs.values())

    def terms(self) -> list[tuple[Partition, Partition, int]]:
        """Terms in display order: nu lexicographically ascending, then lam."""
        return [(nu, lam, c) for (nu, lam), c in self.coeffs.items()]
