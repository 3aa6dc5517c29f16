"""Integer partitions and the small combinatorial toolkit built on them.

Partitions are plain tuples of positive integers in weakly decreasing order;
``()`` is the unique partition of 0.  Everything else in the package indexes
by these tuples, so they must stay hashable and canonical.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator, Tuple

Partition = Tuple[int, ...]


def make_partition(parts: Iterable[int]) -> Partition:
    """Validate ``parts`` and return it as a canonical partition tuple."""
    p = tuple(int(x) for x in parts)
    if any(x < 1 for x in p):
        raise ValueError(f"partition parts must be positive: {p!r}")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"partition parts must be weakly decreasing: {p!r}")
    return p


def size(p: Partition) -> int:
    return sum(p)


def _partitions_bounded(n: int, largest: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_bounded(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def generate_partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse lexicographic order.

    ``(n)`` comes first and ``(1^n)`` last.  This is the canonical order used
    for iteration everywhere in the package.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return tuple(_partitions_bounded(n, n))


def canonical_key(p: Partition):
    """Sort key realising the canonical (reverse lexicographic) order."""
    return tuple(-x for x in p) + (0,)


def conjugate(p: Partition) -> Partition:
    if not p:
        return ()
    return tuple(sum(1 for x in p if x > j) for j in range(p[0]))


def hooks(p: Partition) -> list[int]:
    c = conjugate(p)
    return [p[i] - j + c[j] - i - 1 for i in range(len(p)) for j in range(p[i])]


@lru_cache(maxsize=None)
def hook_dimension(p: Partition) -> int:
    """Dimension of the Specht module S_p via the hook length formula."""
    return factorial(size(p)) // prod(hooks(p))


def remove_box_partitions(p: Partition) -> list[Partition]:
    """Partitions obtained from ``p`` by deleting one removable corner cell.

    Returned in canonical order.
    """
    if not p:
        raise ValueError("the empty partition has no removable cell")
    out = []
    for i, part in enumerate(p):
        if i + 1 == len(p) or p[i + 1] < part:
            q = list(p)
            q[i] -= 1
            out.append(tuple(x for x in q if x))
    return sorted(out, key=canonical_key)


def add_box_partitions(p: Partition) -> list[Partition]:
    out = []
    for i in range(len(p) + 1):
        if i == 0 or p[i - 1] > (p[i] if i < len(p) else 0):
            q = list(p) + [0]
            q[i] += 1
            out.append(tuple(x for x in q if x))
    return sorted(out, key=canonical_key)


def hook_family(m: int) -> list[Partition]:
    """Hooks ``(a, 1^b)`` with ``a >= 1`` and ``2a + b = m + 1``, by increasing ``a``.

    These are the composition factors of the injective envelope attached to
    the column ``(1^m)``.
    """
    if m < 1:
        raise ValueError("m must be positive")
    out = []
    for a in range(1, (m + 1) // 2 + 1):
        b = m + 1 - 2 * a
        out.append((a,) + (1,) * b)
    return out


def is_hook(p: Partition) -> bool:
    return len(p) <= 1 or all(x == 1 for x in p[1:])


def centralizer_order(mu: Partition) -> int:
    """z_mu = prod_i i^{m_i} m_i! for the cycle type ``mu``."""
    return prod(i**m * factorial(m) for i, m in Counter(mu).items())


def class_size(mu: Partition) -> int:
    return factorial(size(mu)) // centralizer_order(mu)


def contains(big: Partition, small: Partition) -> bool:
    """True when the Young diagram of ``small`` sits inside that of ``big``."""
    return len(small) <= len(big) and all(s <= b for s, b in zip(small, big))


# -- text forms -------------------------------------------------------------

def to_text(p: Partition) -> str:
    """Machine form: ``"2,1,1,1"``; the empty partition is ``""``."""
    return ",".join(str(x) for x in p)


def from_text(s: str) -> Partition:
    s = s.strip()
    if not s:
        return ()
    try:
        parts = [int(tok) for tok in s.split(",")]
    except ValueError:
        raise ValueError(f"malformed partition text: {s!r}") from None
    return make_partition(parts)


def display(p: Partition) -> str:
    """Human form with exponent shorthand, e.g. ``(2^2,1^3)``; ``()`` for empty."""
    groups = []
    i = 0
    while i < len(p):
        j = i
        while j < len(p) and p[j] == p[i]:
            j += 1
        run = j - i
        groups.append(f"{p[i]}^{run}" if run > 1 else str(p[i]))
        i = j
    return "(" + ",".join(groups) + ")"


def from_display(s: str) -> Partition:
    """Inverse of :func:`display`; accepts optional surrounding parentheses."""
    s = s.strip().removeprefix("(").removesuffix(")").strip()
    if not s:
        return ()
    parts: list[int] = []
    for tok in s.split(","):
        base, _, exp = tok.strip().partition("^")
        parts.extend([int(base)] * (int(exp) if exp else 1))
    return make_partition(parts)
