"""Command-line entry point: ``outerext <command> [options]``.

Exit status is 0 on success, 1 when a run finds contradictions or failed
checks, and 2 on errors.  Errors are reported on one stderr line of the form
``error[<kind>]: <message>``.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import extengine, liechar, multdata, render
from .errors import ConflictError, MissingEntries, OuterExtError
from .partitions import generate_partitions, size, to_text

EXIT_OK, EXIT_FOUND, EXIT_ERROR = 0, 1, 2


@dataclass
class RunConfig:
    data_paths: list[str] = field(default_factory=list)
    max_degree: int = 2
    mode: str = "continue"
    output_format: str = "human"
    cache_path: str | None = None

    def __post_init__(self):
        if self.max_degree < 2:
            raise ValueError(f"--max must be at least 2, got {self.max_degree}")
        if self.mode not in ("strict", "continue"):
            raise ValueError(f"unknown mode {self.mode!r}")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        return cls(
            data_paths=_data_paths(args),
            max_degree=args.max,
            mode="strict" if getattr(args, "strict", False) else "continue",
            output_format=args.format,
            cache_path=args.cache,
        )


def _data_paths(args: argparse.Namespace) -> list[str]:
    return list(args.data) if args.data else multdata.default_data_paths()


def _write_cache(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")


def _name_degrees(exc: MissingEntries, what: str) -> MissingEntries:
    degrees = sorted({size(c[0]) for c in exc.cells if len(c) == 2})
    if not degrees:
        return exc
    return MissingEntries(exc.cells, f"{what} needs multiplicity data in degree {', '.join(map(str, degrees))}")


# -- commands ------------------------------------------------------------------

def cmd_ext2(args: argparse.Namespace, out) -> int:
    n = args.n
    mult = multdata.load_all(_data_paths(args), n)
    try:
        ext, b = extengine.compute_ext2_table(n, mult)
    except MissingEntries as exc:
        raise _name_degrees(exc, f"Ext^2 at n={n}") from None
    if args.format == "csv":
        out.write(render.birep_csv(b))
    else:
        out.write(f"Ext^2(a^{n - 2}, a^{n})\n{render.birep_human(b)}\ndim {b.dim()}\n")
    _write_cache(args.cache, extengine.serialize_ext(ext))
    return EXIT_OK


def cmd_recursion(args: argparse.Namespace, out) -> int:
    cfg = RunConfig.from_args(args)
    mult = multdata.load_all(cfg.data_paths, cfg.max_degree)
    try:
        ext, reports = extengine.run_koszul_recursion(cfg.max_degree, mult, strict=cfg.mode == "strict")
    except MissingEntries as exc:
        raise _name_degrees(exc, f"the recursion through degree {cfg.max_degree}") from None
    statuses = [ext.status[c] for c in ext.sorted_cells()]
    if cfg.output_format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["nu", "lambda", "forced", "blame_count"])
        for r in reports:
            w.writerow([to_text(r.nu), to_text(r.lam), r.forced_value, len(r.blame_set)])
    else:
        for r in reports:
            out.write(r.to_text())
        counts = {s: statuses.count(s) for s in sorted(set(statuses))}
        summary = ", ".join(f"{s} {k}" for s, k in counts.items())
        out.write(f"recursion through degree {cfg.max_degree}: {len(reports)} contradiction(s); cells: {summary}\n")
    _write_cache(cfg.cache_path, extengine.serialize_ext(ext))
    return EXIT_FOUND if reports else EXIT_OK


def cmd_diagram(args: argparse.Namespace, out) -> int:
    if args.nu < 0 or args.lam < 0:
        raise ValueError("sizes must be nonnegative")
    sup = extengine.e1_support(args.nu, args.lam)
    text = render.e1_svg(sup) if args.svg else render.e1_ascii(sup)
    if args.cache:
        _write_cache(args.cache, text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_invert(args: argparse.Namespace, out) -> int:
    cfg = RunConfig.from_args(args)
    mult = multdata.load_all(cfg.data_paths, cfg.max_degree)
    try:
        ext, reports = extengine.run_koszul_recursion(cfg.max_degree, mult)
    except MissingEntries as exc:
        raise _name_degrees(exc, f"the recursion through degree {cfg.max_degree}") from None
    top = min([size(r.lam) - 1 for r in reports] + [cfg.max_degree])
    inv = extengine.invert_for_multiplicities(ext, top)
    mismatches = [
        (lam, rho)
        for m in range(top + 1)
        for lam in generate_partitions(m)
        for p in range(m + 1)
        for rho in generate_partitions(p)
        if inv.query(lam, rho) != mult.query(lam, rho)
    ]
    for lam, rho in mismatches:
        out.write(f"mismatch mult({to_text(lam)} ; {to_text(rho)}): input {mult.query(lam, rho)}, inverted {inv.query(lam, rho)}\n")
    verdict = "identity" if not mismatches else f"{len(mismatches)} mismatch(es)"
    out.write(f"round trip through degree {top}: {verdict} ({len(inv.entries)} cells)\n")
    _write_cache(cfg.cache_path, multdata.serialize_table(inv))
    return EXIT_FOUND if mismatches else EXIT_OK


def cmd_lie_check(args: argparse.Namespace, out) -> int:
    cfg = RunConfig.from_args(args)
    mult = multdata.load_all(cfg.data_paths, cfg.max_degree)
    failed = False
    for n in range(3, cfg.max_degree + 1):
        try:
            rep = liechar.verify_cyclic_restriction(mult, n)
        except MissingEntries:
            out.write(f"Lie(({n})) restriction: skipped (column (2) incomplete)\n")
            continue
        failed |= not rep.ok
        oracle = rep.reconstructed == liechar.whitehouse_cyclic_lie(n)
        failed |= not oracle
        out.write(f"{rep}; Lie(({n})) = {rep.reconstructed.to_text()}; oracle {'agrees' if oracle else 'DISAGREES'}\n")
    return EXIT_FOUND if failed else EXIT_OK


# -- validate --------------------------------------------------------------------

def validation_lines(paths: list[str], max_degree: int | None = None) -> list[tuple[str, str, str]]:
    """(status, check, detail) triples; status is PASS, FAIL or SKIP."""
    files = multdata.data_files(paths)
    parts = [multdata.packaged_fixture()] + [multdata.load_table(p) for p in files]
    top = max([3] + [p.max_degree for p in parts]) if max_degree is None else max_degree
    parts.insert(0, multdata.builtin_table(top))
    lines: list[tuple[str, str, str]] = []

    try:
        t = multdata.merge(parts)
        lines.append(("PASS", "merge", f"{len(t.entries)} cells, no conflicting values"))
    except ConflictError as exc:
        return lines + [("FAIL", "merge", str(exc))]

    problems = multdata.invariant_violations(t)
    lines.append(("FAIL", "structure", "; ".join(problems)) if problems else
                 ("PASS", "structure", "diagonal, triangularity and forced zeros hold"))
    bad_hooks = [m for m in range(1, top + 1)
                 if any(t.query((1,) * m, rho) != v for rho, v in multdata.hook_row(m).items())]
    lines.append(("FAIL", "hook-rows", f"degrees {bad_hooks}") if bad_hooks else
                 ("PASS", "hook-rows", f"rows (1^m) match the hook family for m <= {top}"))

    scopes = [("fixture", range(3, 4))]
    if files:
        scopes.append(("dataset", range(4, top + 1)))
    for scope, degrees in scopes:
        lines.extend(_data_checks(t, scope, degrees))
    if not files:
        for name in ("two-column-identity", "cyclic-lie", "a2-vanishing"):
            lines.append(("SKIP", f"dataset:{name}", "skipped: dataset absent"))
    return lines


def _data_checks(t: multdata.MultTable, scope: str, degrees: range) -> list[tuple[str, str, str]]:
    out = []
    bad, checked = [], 0
    for n in degrees:
        for lam in generate_partitions(n):
            a, b = t.query(lam, (2,)), t.query(lam, (1, 1, 1))
            if a is None or b is None:
                continue
            checked += 1
            if a != b:
                bad.append(f"{to_text(lam)}: {a} != {b}")
    if bad:
        out.append(("FAIL", f"{scope}:two-column-identity", "; ".join(bad)))
    elif checked:
        out.append(("PASS", f"{scope}:two-column-identity", f"{checked} rows"))
    else:
        out.append(("SKIP", f"{scope}:two-column-identity", "no covered rows"))

    for n in degrees:
        try:
            rep = liechar.verify_cyclic_restriction(t, n)
        except MissingEntries:
            out.append(("SKIP", f"{scope}:cyclic-lie n={n}", "column (2) incomplete"))
            continue
        out.append(("PASS" if rep.ok else "FAIL", f"{scope}:cyclic-lie n={n}", str(rep)))

    if scope == "dataset" and degrees:
        a2 = extengine.verify_a2_vanishing(t, degrees[-1])
        if a2.failures:
            out.append(("FAIL", "dataset:a2-vanishing", "; ".join(a2.failures)))
        else:
            verdicts = ", ".join(f"n={n} {v}" for n, v in sorted(a2.verdicts.items()))
            out.append(("PASS", "dataset:a2-vanishing", verdicts))
    return out


def cmd_validate(args: argparse.Namespace, out) -> int:
    lines = validation_lines(_data_paths(args), args.max)
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["status", "check", "detail"])
        w.writerows(lines)
    else:
        for status, check, detail in lines:
            out.write(f"{status} {check}: {detail}\n")
    return EXIT_FOUND if any(s == "FAIL" for s, _, _ in lines) else EXIT_OK


# -- wiring ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data", action="append", metavar="PATH",
                        help=f"multiplicity file or directory (repeatable; default ${multdata.DATA_ENV})")
    common.add_argument("--format", choices=("human", "csv"), default="human")
    common.add_argument("--cache", metavar="PATH", help="write the computed table to PATH")

    parser = argparse.ArgumentParser(prog="outerext", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ext2", parents=[common], help="Ext^2(a^(n-2), a^n) decomposition")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_ext2)

    p = sub.add_parser("recursion", parents=[common], help="concentration recursion with contradiction reports")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--strict", action="store_true", help="stop at the first contradiction")
    p.set_defaults(func=cmd_recursion)

    p = sub.add_parser("diagram", parents=[common], help="E_1 page support")
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--svg", action="store_true")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("validate", parents=[common], help="invariant battery over the loaded data")
    p.add_argument("--max", type=int, default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invert", parents=[common], help="recover multiplicities from the Ext table")
    p.add_argument("--max", type=int, required=True)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("lie-check", parents=[common], help="Lie((n)) restriction check")
    p.add_argument("--max", type=int, required=True)
    p.set_defaults(func=cmd_lie_check)
    return parser


def _one_line(text: str) -> str:
    return " ".join(str(text).split())


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    buf = io.StringIO()
    try:
        code = args.func(args, buf)
    except OuterExtError as exc:
        print(f"error[{exc.kind}]: {_one_line(exc)}", file=sys.stderr)
        return EXIT_ERROR
    except FileNotFoundError as exc:
        print(f"error[io]: {_one_line(exc)}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error[usage]: {_one_line(exc)}", file=sys.stderr)
        return EXIT_ERROR
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
