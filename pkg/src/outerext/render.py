"""Text, CSV and SVG renderings of tables, reports and E_1 pages."""

from __future__ import annotations

import csv
import io
import re

from .extengine import E1Support
from .partitions import display, from_display, to_text
from .repring import BiRep


def birep_human(b: BiRep) -> str:
    """Sum of outer tensor products, e.g. ``(S(1^3) ⊠ S(2,1^3)) + 2(S(2,1) ⊠ S(1^5))``."""
    if not b.coeffs:
        return "0"
    parts = []
    for nu, lam, c in b.terms():
        term = f"(S{display(nu)} ⊠ S{display(lam)})"
        parts.append(term if c == 1 else f"{c}{term}")
    return " + ".join(parts)


def birep_csv(b: BiRep) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["nu", "lambda", "coeff"])
    for nu, lam, c in b.terms():
        w.writerow([to_text(nu), to_text(lam), c])
    return buf.getvalue()


def latex_row_to_human(row: str) -> str:
    """Convert a LaTeX cell like ``2(\\Specht{(2,1)}\\boxtimes \\Specht{(1^5)})`` to :func:`birep_human` form."""
    s = row.strip().strip("$").strip()
    s = s.replace("\\boxtimes", " ⊠ ").replace("\\Specht{", "S").replace("})", ")")
    s = s.replace("^{", "^").replace("}", "")
    s = " ".join(s.split())
    return s.replace("( S", "(S").replace(" )", ")")


# -- E_1 page ------------------------------------------------------------------

def _cell_kind(sup: E1Support, p: int, q: int) -> str:
    if (p, q) not in sup.region:
        return "."
    return "o" if sup.proven_zero(p, q) else "#"


def e1_ascii(sup: E1Support) -> str:
    """Grid with p across and q down; ``#`` may be nonzero, ``o`` is known zero."""
    n, m = sup.nu_size, sup.lambda_size
    if not sup.region:
        return f"E1 page for |nu|={n}, |lambda|={m}: empty\n"
    cols = range(0, m + 1)
    rows = range(-n, -m - 1, -1)
    width = max(3, len(str(-m)) + 1)
    lines = [f"E1 page for |nu|={n}, |lambda|={m}"]
    lines.append(" " * (width + 1) + "".join(f"{p:>3}" for p in cols) + "   p")
    for q in rows:
        cells = "".join(f"{_cell_kind(sup, p, q):>3}" for p in cols)
        lines.append(f"{q:>{width}} " + cells + f"   Ext^{m + q}")
    lines.append(" " * (width + 1) + "q")
    lines.append(f"column p={m}: Ext^(p+q)(S_nu, S_lambda); # may be nonzero, o proven zero")
    return "\n".join(lines) + "\n"


def e1_svg(sup: E1Support, cell: int = 40) -> str:
    """Standalone SVG of the admissible region in the style of the usual E_1 picture."""
    n, m = sup.nu_size, sup.lambda_size
    pad = cell * 2
    w = (m + 2) * cell + pad * 2
    h = (max(m, 1) + 2) * cell + pad * 2

    def xy(p: int, q: int) -> tuple[float, float]:
        return pad + (p + 0.5) * cell, pad + (-q + 0.5) * cell

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<title>E1 page, |nu|={n}, |lambda|={m}</title>',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    x0, y0 = xy(0, 0)
    out.append(f'<line x1="{x0 - cell / 2}" y1="{y0}" x2="{w - pad / 2}" y2="{y0}" stroke="black"/>')
    out.append(f'<line x1="{x0}" y1="{y0 + cell / 2}" x2="{x0}" y2="{h - pad / 2}" stroke="black"/>')
    out.append(f'<text x="{w - pad / 2}" y="{y0 - 6}" font-size="14">p</text>')
    out.append(f'<text x="{x0 + 6}" y="{h - pad / 2}" font-size="14">q</text>')
    if sup.region:
        lo = min(p for p, _ in sup.region)
        corners = [xy(lo, -n), xy(m, -n), xy(m, -m), xy(lo, -lo)]
        pts = " ".join(f"{x:.1f},{y:.1f}" for x, y in corners)
        out.append(f'<polygon points="{pts}" fill="#d9d9d9" stroke="#a0a0a0" stroke-width="{cell * 0.9:.1f}" stroke-linejoin="round"/>')
        for p, q in sorted(sup.region):
            x, y = xy(p, q)
            if sup.proven_zero(p, q):
                out.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="{cell * 0.18:.1f}" fill="white" stroke="black"/>')
            else:
                s = cell * 0.3
                out.append(f'<rect x="{x - s / 2:.1f}" y="{y - s / 2:.1f}" width="{s:.1f}" height="{s:.1f}" fill="black"/>')
        for q in range(-n, -m - 1, -1):
            x, y = xy(m, q)
            out.append(f'<text x="{x + cell * 0.4:.1f}" y="{y + 4:.1f}" font-size="11">Ext^{m + q}</text>')
    for p in range(0, m + 1):
        x, _ = xy(p, 0)
        out.append(f'<text x="{x - 3:.1f}" y="{y0 - 6}" font-size="11">{p}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


_TERM = re.compile(r"(\d*)\(S(\([^()]*\)) ⊠ S(\([^()]*\))\)")


def parse_birep_human(text: str, levels: tuple[int, int]) -> BiRep:
    """Inverse of :func:`birep_human`."""
    text = text.strip()
    if text == "0":
        return BiRep(levels)
    coeffs: dict = {}
    for i, chunk in enumerate(text.split(" + ")):
        m = _TERM.fullmatch(chunk.strip())
        if not m:
            raise ValueError(f"cannot parse term {i + 1}: {chunk!r}")
        key = (from_display(m.group(2)), from_display(m.group(3)))
        coeffs[key] = coeffs.get(key, 0) + int(m.group(1) or 1)
    return BiRep(levels, coeffs)
