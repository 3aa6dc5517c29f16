"""Brute-force reference computations, deliberately independent of the package.

Nothing here imports outerext; everything is done from first principles on
permutations, words and polynomials, and is only feasible for small n.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial, prod

import sympy


def partitions_by_composition(n: int) -> set[tuple[int, ...]]:
    """Partitions of n as sorted compositions (2^(n-1) of them)."""
    out = set()
    for cuts in product((0, 1), repeat=max(n - 1, 0)):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        if n:
            parts.append(run)
        out.add(tuple(sorted(parts, reverse=True)))
    return out


def count_standard_tableaux(shape: tuple[int, ...]) -> int:
    """Count SYT by removing the largest entry from a corner, recursively."""
    if sum(shape) == 0:
        return 1
    total = 0
    for i, r in enumerate(shape):
        if r and (i + 1 == len(shape) or shape[i + 1] < r):
            smaller = list(shape)
            smaller[i] -= 1
            total += count_standard_tableaux(tuple(x for x in smaller if x))
    return total


def cycle_type(perm: tuple[int, ...]) -> tuple[int, ...]:
    seen, lengths = set(), []
    for start in range(len(perm)):
        if start in seen:
            continue
        k, j = 0, start
        while j not in seen:
            seen.add(j)
            j = perm[j]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths, reverse=True))


def frobenius_character(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """chi_lam(mu) as the coefficient of x^(lam + delta) in a_delta * p_mu."""
    n = len(lam)
    xs = sympy.symbols(f"x0:{n}")
    vandermonde = prod(xs[i] - xs[j] for i in range(n) for j in range(i + 1, n))
    power_sums = prod(sum(x**k for x in xs) for k in mu)
    poly = sympy.Poly(sympy.expand(vandermonde * power_sums), *xs)
    exps = tuple(lam[i] + n - 1 - i for i in range(n))
    return int(poly.coeff_monomial(prod(x**e for x, e in zip(xs, exps))))


def z(mu: tuple[int, ...]) -> int:
    return prod(k**m * factorial(m) for k, m in Counter(mu).items())


def induced_value(f, g, a: int, b: int, rho: tuple[int, ...]) -> Fraction:
    """(Ind_{S_a x S_b} f x g)(rho) by splitting the cycles of rho between the factors."""
    total = Fraction(0)
    seen = set()
    for k in range(len(rho) + 1):
        for idx in combinations(range(len(rho)), k):
            alpha = tuple(sorted((rho[i] for i in idx), reverse=True))
            beta = tuple(sorted((rho[i] for i in range(len(rho)) if i not in idx), reverse=True))
            if sum(alpha) != a or (alpha, beta) in seen:
                continue
            seen.add((alpha, beta))
            total += Fraction(z(rho), z(alpha) * z(beta)) * f(alpha) * g(beta)
    return total


def lie_character_by_brackets(n: int) -> dict[tuple[int, ...], int]:
    """Character of the multilinear part of the free Lie algebra on n letters.

    The span of the left-normed brackets [x_s1, [x_s2, ..., x_sn]] is computed
    inside the n!-dimensional space of multilinear words; the trace of each
    class representative on that span gives the character.
    """
    words = list(permutations(range(n)))
    index = {w: i for i, w in enumerate(words)}

    def expand(seq):
        if len(seq) == 1:
            return {seq: 1}
        head, tail = (seq[0],), expand(seq[1:])
        out: dict = {}
        for w, c in tail.items():
            out[head + w] = out.get(head + w, 0) + c
            out[w + head] = out.get(w + head, 0) - c
        return out

    rows = []
    for s in permutations(range(n)):
        vec = [0] * len(words)
        for w, c in expand(s).items():
            vec[index[w]] += c
        rows.append(vec)
    span = sympy.Matrix(rows).T
    basis = span.columnspace()
    B = sympy.Matrix.hstack(*basis)
    pinv = (B.T * B).inv() * B.T

    char = {}
    for perm in permutations(range(n)):
        ct = cycle_type(perm)
        if ct in char:
            continue
        images = []
        for col in basis:
            moved = [0] * len(words)
            for w, i in index.items():
                if col[i]:
                    moved[index[tuple(perm[x] for x in w)]] += col[i]
            images.append(sympy.Matrix(moved))
        M = pinv * sympy.Matrix.hstack(*images)
        char[ct] = int(M.trace())
    return char
