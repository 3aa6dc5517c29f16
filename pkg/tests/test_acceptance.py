"""Acceptance gate: one test per criterion, one summary line per test.

Criteria 5-10 need the external multiplicity tables.  Without them each runs
on the transcribed fixtures (``...-fixture`` tests) and the full version is
skipped with the reason "dataset absent".  Point ``OUTEREXT_DATA`` at the
data files to run the full versions.
"""

import io
import random
import time
from math import factorial

import pytest

from conftest import FIXTURES, dataset_paths
from oracles import lie_character_by_brackets
from outerext.cli import main
from outerext.extengine import (
    ContradictionReport,
    assemble_equivariant,
    build_row_complex,
    compute_ext2_table,
    invert_for_multiplicities,
    parse_ext,
    run_koszul_recursion,
    solve_acyclic,
    verify_a2_vanishing,
)
from outerext.liechar import lie_rep, verify_cyclic_restriction
from outerext.multdata import builtin_table, load_all
from outerext.partitions import generate_partitions, hook_dimension, hook_family, size
from outerext.render import birep_human, latex_row_to_human
from outerext.repring import BiRep, ClassFunction, VirtualRep, character, decompose, inner_product, restrict

REPORT: list[str] = []
LABELS = {
    "test_c1_representation_ring": "1  representation-ring battery",
    "test_c2_lie_oracle": "2  Lie(n) oracle",
    "test_c3_hook_closed_form": "3  hook closed form",
    "test_c4_contradiction_fixture": "4  contradiction fixture",
    "test_c5_ext2_dims_fixture": "5  Ext^2 dimensions, fixture subset n=2,3,5,6,7",
    "test_c5_ext2_dims_dataset": "5  Ext^2 dimensions n=2..10",
    "test_c6_ext2_decomp_fixture": "6  Ext^2 decompositions n=5,6,7 from transcribed cells",
    "test_c6_ext2_decomp_dataset": "6  Ext^2 decompositions n=5,6,7 computed from data",
    "test_c7_a2_fixture": "7  a^2 low-degree outputs",
    "test_c7_a2_dataset": "7  a^2 vanishing for 4<=n<=10",
    "test_c8_koszul_fixture": "8  (4),(1^9) contradiction from fixture complex",
    "test_c8_koszul_dataset": "8  Koszul falsification through degree 10",
    "test_c9_round_trip_fixture": "9  round trip through degree 3",
    "test_c9_round_trip_dataset": "9  round trip over contradiction-free range",
    "test_c10_cyclic_lie_fixture": "10 cyclic Lie consistency, degree 3",
    "test_c10_cyclic_lie_dataset": "10 cyclic Lie consistency, all covered n",
}

EXT2_DIMS = {2: 0, 3: 0, 4: 0, 5: 28, 6: 478, 7: 6718, 8: 90718, 9: 1239838, 10: 17539198}
EXPECTED_BLAME = {
    ((4,), (2, 2, 1, 1, 1), 2),
    ((4,), (2, 1, 1, 1, 1, 1), 2),
    ((4,), (2, 1, 1, 1, 1, 1, 1), 3),
    ((4,), (1,) * 9, 4),
}


@pytest.fixture(autouse=True)
def _record(request):
    yield
    rep = getattr(request.node, "rep_call", None) or getattr(request.node, "rep_setup", None)
    label = LABELS.get(request.node.name, request.node.name)
    if rep is None:
        return
    if rep.skipped:
        reason = rep.longrepr[2] if isinstance(rep.longrepr, tuple) else str(rep.longrepr)
        REPORT.append(f"SKIP  criterion {label}: {reason.removeprefix('Skipped: ')}")
    else:
        REPORT.append(f"{'PASS' if rep.passed else 'FAIL'}  criterion {label}")


def need_dataset() -> list[str]:
    paths = dataset_paths()
    if not paths:
        pytest.skip("skipped: dataset absent")
    return paths


def rows(name):
    out = {}
    for line in (FIXTURES / name).read_text(encoding="utf-8").splitlines():
        if line.strip() and not line.startswith("#"):
            n, body = line.split("\t", 1)
            out[int(n)] = body
    return out


# -- criteria that need no external data -----------------------------------------------

def test_c1_representation_ring():
    start = time.perf_counter()
    for n in range(1, 9):
        chars = [character(lam) for lam in generate_partitions(n)]
        assert all(inner_product(f, g) == int(i == j) for i, f in enumerate(chars) for j, g in enumerate(chars))
    for n in range(0, 11):
        assert sum(hook_dimension(lam) ** 2 for lam in generate_partitions(n)) == factorial(n)

    rng = random.Random(2024)

    def rand_rep(n):
        return VirtualRep(n, {lam: rng.randint(-2, 2) for lam in generate_partitions(n)})

    for _ in range(100):
        u, v, w = rand_rep(rng.randint(0, 3)), rand_rep(rng.randint(0, 3)), rand_rep(rng.randint(0, 3))
        assert u * v == v * u
        assert (u * v) * w == u * (v * w)
    one = VirtualRep.irreducible((1,))
    for _ in range(100):
        n = rng.randint(1, 7)
        u, w = rand_rep(n), rand_rep(n - 1)
        assert restrict(u).pairing(w) == u.pairing(w * one)
    assert time.perf_counter() - start < 60


def test_c2_lie_oracle():
    from fractions import Fraction

    start = time.perf_counter()
    for n in range(1, 10):
        rep = lie_rep(n).rep
        assert rep.is_genuine() and sum(c * hook_dimension(lam) for lam, c in rep.coeffs.items()) == factorial(n - 1)
    for n, expected in [(2, (1, 1)), (3, (2, 1))]:
        oracle = decompose(ClassFunction(n, {mu: Fraction(v) for mu, v in lie_character_by_brackets(n).items()}))
        assert oracle == VirtualRep.irreducible(expected) == lie_rep(n).rep
    assert time.perf_counter() - start < 30


def test_c3_hook_closed_form():
    assert set(hook_family(9)) == {(1,) * 9, (2,) + (1,) * 6, (3, 1, 1, 1, 1), (4, 1, 1), (5,)}
    assert len(hook_family(9)) == 5


def test_c4_contradiction_fixture():
    from outerext.extengine import RowComplex

    c = RowComplex((4,), (1,) * 9, (0, 0, 0, 2, 1, None))
    r = solve_acyclic(c)
    assert isinstance(r, ContradictionReport)
    assert r.forced_value == -1


# -- criteria 5-10, fixture subsets ------------------------------------------------------------

def test_c5_ext2_dims_fixture(monkeypatch):
    monkeypatch.delenv("OUTEREXT_DATA", raising=False)
    for n in (2, 3):
        out = io.StringIO()
        assert main(["ext2", "--n", str(n)], out=out) == 0
        assert out.getvalue().splitlines()[-1] == f"dim {EXT2_DIMS[n]}"
    ext = parse_ext((FIXTURES / "ext2_cells.txt").read_text())
    for n in (5, 6, 7):
        assert assemble_equivariant(n - 2, n, ext, 2).dim() == EXT2_DIMS[n]


def test_c6_ext2_decomp_fixture():
    ext = parse_ext((FIXTURES / "ext2_cells.txt").read_text())
    latex = rows("ext2_latex.txt")
    for n in (5, 6, 7):
        assert birep_human(assemble_equivariant(n - 2, n, ext, 2)) == latex_row_to_human(latex[n])


def test_c7_a2_fixture():
    rep = verify_a2_vanishing(load_all([], 3), 3)
    assert rep.ext0 == BiRep((2, 2), {((1, 1), (1, 1)): 1, ((2,), (2,)): 1})
    assert rep.ext1 == BiRep((2, 3), {((2,), (1, 1, 1)): 1})


def test_c8_koszul_fixture():
    ext = parse_ext((FIXTURES / "koszul_4_1_9.txt").read_text())
    c = build_row_complex((4,), (1,) * 9, ext, builtin_table(9))
    assert c.terms == (0, 0, 0, 2, 1, None)
    r = solve_acyclic(c)
    assert isinstance(r, ContradictionReport) and r.forced_value == -1
    assert ((4,), (1,) * 9, 4) in r.blame_set


def test_c9_round_trip_fixture():
    mult = load_all([], 3)
    ext, reports = run_koszul_recursion(3, mult)
    assert not reports
    inv = invert_for_multiplicities(ext, 3)
    assert all(inv.query(lam, rho) == v for (lam, rho), v in mult.entries.items())


def test_c10_cyclic_lie_fixture():
    mult = load_all([], 3)
    assert verify_cyclic_restriction(mult, 3).ok
    assert all(mult.query(lam, (2,)) == mult.query(lam, (1, 1, 1)) for lam in generate_partitions(3))


# -- criteria 5-10 on the full dataset -----------------------------------------------------------

def test_c5_ext2_dims_dataset():
    paths = need_dataset()
    start = time.perf_counter()
    mult = load_all(paths, 10)
    dims = {n: compute_ext2_table(n, mult)[1].dim() for n in range(2, 11)}
    assert dims == EXT2_DIMS
    assert time.perf_counter() - start < 300


def test_c6_ext2_decomp_dataset():
    paths = need_dataset()
    mult = load_all(paths, 7)
    latex = rows("ext2_latex.txt")
    for n in (5, 6, 7):
        assert birep_human(compute_ext2_table(n, mult)[1]) == latex_row_to_human(latex[n])


def test_c7_a2_dataset():
    paths = need_dataset()
    rep = verify_a2_vanishing(load_all(paths, 10), 10)
    assert rep.ok
    assert rep.verdicts == {n: "vanishes" for n in range(4, 11)}


def test_c8_koszul_dataset():
    paths = need_dataset()
    start = time.perf_counter()
    ext, reports = run_koszul_recursion(10, load_all(paths, 10))
    by_pair = {(r.nu, r.lam): r for r in reports}
    assert ((4,), (1,) * 9) in by_pair and ((1, 1, 1), (3, 3, 2, 2)) in by_pair
    first_n4 = next(r for r in reports if size(r.nu) == 4 and 7 <= size(r.lam) <= 9)
    first_n3 = next(r for r in reports if size(r.nu) == 3 and 6 <= size(r.lam) <= 10)
    assert (first_n4.nu, first_n4.lam) == ((4,), (1,) * 9)
    assert (first_n3.nu, first_n3.lam) == ((1, 1, 1), (3, 3, 2, 2))
    assert EXPECTED_BLAME <= set(by_pair[((4,), (1,) * 9)].blame_set)
    assert time.perf_counter() - start < 300


def test_c9_round_trip_dataset():
    paths = need_dataset()
    mult = load_all(paths, 10)
    ext, reports = run_koszul_recursion(10, mult)
    top = min([size(r.lam) - 1 for r in reports] + [10])
    inv = invert_for_multiplicities(ext, top)
    assert all(inv.query(lam, rho) == v for (lam, rho), v in mult.entries.items() if size(lam) <= top)


def test_c10_cyclic_lie_dataset():
    paths = need_dataset()
    mult = load_all(paths, 10)
    covered = [n for n in range(3, 11) if all(mult.known(lam, (2,)) for lam in generate_partitions(n))]
    assert covered
    assert all(verify_cyclic_restriction(mult, n).ok for n in covered)
    for (lam, rho), v in mult.entries.items():
        if rho == (2,) and size(lam) >= 3 and mult.known(lam, (1, 1, 1)):
            assert v == mult.query(lam, (1, 1, 1))
