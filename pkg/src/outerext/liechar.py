"""Characters of Lie(n) and of the cyclic Lie modules Lie((n)).

Lie(n) comes from the classical Möbius-weighted power-sum formula.  Lie((n))
is *not* derived here: it is read off a multiplicity table through the
identification (ωβS_λ)^(2) = <Lie((n)), S_λ> and then cross-checked against
Lie(n-1) by restriction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import MissingEntries
from .partitions import Partition, centralizer_order, generate_partitions
from .repring import ClassFunction, VirtualRep, decompose, dim, lr_product, restrict


def mobius(d: int) -> int:
    if d < 1:
        raise ValueError("mobius is defined on positive integers")
    result, k, rem = 1, 2, d
    while k * k <= rem:
        if rem % k == 0:
            rem //= k
            if rem % k == 0:
                return 0
            result = -result
        k += 1
    return -result if rem > 1 else result


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class LieRep:
    level: int
    rep: VirtualRep


def lie_class_function(n: int) -> ClassFunction:
    """(1/n) sum_{d|n} mu(d) p_d^{n/d} as a class function on S_n.

    p_d^{n/d} is supported on the cycle type (d^{n/d}) with value z there, so
    that its pairing with chi_lam is chi_lam(d^{n/d}).
    """
    if n < 1:
        raise ValueError("Lie(n) needs n >= 1")
    values = {mu: Fraction(0) for mu in generate_partitions(n)}
    for d in divisors(n):
        mu = (d,) * (n // d)
        values[mu] += Fraction(mobius(d) * centralizer_order(mu), n)
    return ClassFunction(n, values)


def lie_rep(n: int) -> LieRep:
    return LieRep(n, decompose(lie_class_function(n)))


def whitehouse_cyclic_lie(n: int) -> VirtualRep:
    """Lie((n)) as Ind Lie(n-1) - Lie(n); an independent oracle, n >= 2."""
    if n < 2:
        raise ValueError("Lie((n)) needs n >= 2")
    return lr_product(lie_rep(n - 1).rep, VirtualRep.irreducible((1,))) - lie_rep(n).rep


def cyclic_lie_from_table(t, n: int) -> LieRep:
    """Reconstruct Lie((n)) from the column rho = (2) of a multiplicity table."""
    if n < 3:
        raise ValueError("the (2)-column identification needs n >= 3")
    coeffs: dict[Partition, int] = {}
    missing = []
    for lam in generate_partitions(n):
        v = t.query(lam, (2,))
        if v is None:
            missing.append(lam)
        else:
            coeffs[lam] = v
    if missing:
        raise MissingEntries([(lam, (2,)) for lam in missing])
    return LieRep(n, VirtualRep(n, coeffs))


@dataclass(frozen=True)
class RestrictionReport:
    n: int
    ok: bool
    reconstructed: VirtualRep
    difference: VirtualRep
    dimension_ok: bool

    def __str__(self) -> str:
        verdict = "pass" if self.ok else f"FAIL difference={self.difference.to_text()}"
        return f"Lie(({self.n})) restriction: {verdict}"


def verify_cyclic_restriction(t, n: int) -> RestrictionReport:
    """Check Res Lie((n)) = Lie(n-1) with Lie((n)) read from ``t``.

    Failures come back in the report; only missing table entries raise.
    """
    cyc = cyclic_lie_from_table(t, n).rep
    diff = restrict(cyc) - lie_rep(n - 1).rep
    dim_ok = dim(cyc) == factorial(n - 2)
    return RestrictionReport(n, not diff and dim_ok, cyc, diff, dim_ok)
