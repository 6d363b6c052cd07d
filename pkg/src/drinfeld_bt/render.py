"""SVG and ASCII pictures of Weyl-chamber windows in rank 3.

Vertex (n1, n2) sits at (n1 - n2/2, n2 * sqrt(3)/2), so the apartment's
triangles are equilateral.  Edges run in three directions: (1,0), (1,1) and
(0,1).  The highlighted subcomplex is full, so heavy edges are exactly the
window edges with both ends highlighted.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Sequence

from .alpha_norms import log_alpha_norm_vertex
from .coefficient_forms import wprime_membership
from .core_params import Context, ValidationError
from .weyl_complex import window_edges, window_vertices, wk_membership

MAX_RENDER_BOUND = 32
UNIT = 60
MARGIN = 40
SQRT3_2 = math.sqrt(3) / 2


class UnsupportedRank(ValidationError):
    pass


Vertex2 = tuple[int, int]


@dataclass(frozen=True)
class Mode:
    kind: str
    k: int
    d: int | None = None

    @classmethod
    def parse(cls, text: str) -> "Mode":
        parts = text.split(":")
        try:
            nums = [int(p) for p in parts[1:]]
        except ValueError:
            nums = []
        if parts[0] in ("wk", "alpha_norm", "inner_degree") and len(nums) == 1:
            mode = cls(parts[0], nums[0])
        elif parts[0] == "wprime" and len(nums) == 2:
            mode = cls("wprime", nums[1], nums[0])
        else:
            raise ValidationError(
                f"mode must be wk:K, wprime:D:K, alpha_norm:K or inner_degree:K, got {text!r}"
            )
        if mode.k < 1 or (mode.d is not None and mode.d < 1):
            raise ValidationError("mode parameters must be positive")
        return mode

    def title(self) -> str:
        if self.kind == "wprime":
            return f"W'_{self.d}({self.k})"
        if self.kind == "wk":
            return f"W({self.k})"
        return f"{self.kind} k={self.k}"


@dataclass
class ChamberFigure:
    bound: int
    mode: Mode
    vertices: list[Vertex2]
    edges: list[tuple[Vertex2, Vertex2]]
    highlighted: set[Vertex2]
    heavy: set[tuple[Vertex2, Vertex2]]
    labels: dict[Vertex2, str] = field(default_factory=dict)


def _edge_key(a: Vertex2, b: Vertex2) -> tuple[Vertex2, Vertex2]:
    return (a, b) if a <= b else (b, a)


def build_figure(ctx: Context, mode: Mode | str, bound: int) -> ChamberFigure:
    if ctx.r != 3:
        raise UnsupportedRank(f"rendering needs r = 3, got r = {ctx.r}")
    if not 1 <= bound <= MAX_RENDER_BOUND:
        raise ValidationError(f"render bound must be in 1..{MAX_RENDER_BOUND}")
    if isinstance(mode, str):
        mode = Mode.parse(mode)
    full = window_vertices(3, bound)
    verts = [(n[0], n[1]) for n in full]
    if mode.kind == "wprime":
        member = {(n[0], n[1]) for n in full if wprime_membership(ctx, n, mode.d, mode.k)}
    else:
        member = {(n[0], n[1]) for n in full if wk_membership(ctx, n, mode.k)}
    edges = sorted(_edge_key(tuple(a[:2]), tuple(b[:2])) for a, b in map(tuple, window_edges(set(full))))
    heavy = {e for e in edges if e[0] in member and e[1] in member}
    labels: dict[Vertex2, str] = {}
    if mode.kind == "alpha_norm":
        for n in full:
            labels[n[:2]] = _fmt_rational(log_alpha_norm_vertex(ctx, n, mode.k))
    elif mode.kind == "inner_degree":
        from .vanderput import FormSpec, inner_degree

        f = FormSpec("alpha", mode.k)
        for n in full:
            labels[n[:2]] = str(inner_degree(ctx, f, n))
    return ChamberFigure(bound, mode, verts, edges, member, heavy, labels)


def _fmt_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def embed(v: Vertex2) -> tuple[float, float]:
    return (v[0] - v[1] / 2, v[1] * SQRT3_2)


# --------------------------------------------------------------------------
# SVG


def _px(fig: ChamberFigure, v: Vertex2) -> tuple[str, str]:
    x, y = embed(v)
    top = fig.bound * SQRT3_2
    return (f"{MARGIN + (x + fig.bound / 2) * UNIT:.2f}", f"{MARGIN + (top - y) * UNIT:.2f}")


def render_svg(fig: ChamberFigure) -> str:
    width = MARGIN * 2 + (fig.bound * 1.5) * UNIT
    height = MARGIN * 2 + fig.bound * SQRT3_2 * UNIT + (24 if fig.labels else 0)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2f}" height="{height:.2f}">',
        f'<text x="{MARGIN}" y="{MARGIN / 2:.2f}" font-size="14">{fig.mode.title()}, n1 &lt;= {fig.bound}</text>',
    ]
    for a, b in fig.edges:
        (x1, y1), (x2, y2) = _px(fig, a), _px(fig, b)
        heavy = (a, b) in fig.heavy
        cls = "heavy" if heavy else "light"
        out.append(
            f'<line id="e_{a[0]}_{a[1]}__{b[0]}_{b[1]}" class="{cls}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            f'stroke="black" stroke-width="{4 if heavy else 1}"/>'
        )
    for v in fig.vertices:
        x, y = _px(fig, v)
        on = v in fig.highlighted
        out.append(
            f'<circle id="v_{v[0]}_{v[1]}" class="{"heavy" if on else "light"}" cx="{x}" cy="{y}" '
            f'r="{5 if on else 3}" fill="{"black" if on else "white"}" stroke="black"/>'
        )
        out.append(f'<text x="{x}" y="{float(y) + 16:.2f}" font-size="9" text-anchor="middle">({v[0]},{v[1]})</text>')
        if v in fig.labels:
            out.append(
                f'<text id="l_{v[0]}_{v[1]}" x="{x}" y="{float(y) - 9:.2f}" font-size="11" '
                f'text-anchor="middle">{fig.labels[v]}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# ASCII

LEGEND = [
    "legend: @ highlighted vertex, o other vertex",
    "        = / \\ heavy edges, - , ` light edges (horizontal, rising, falling)",
]


def render_ascii(fig: ChamberFigure) -> str:
    b = fig.bound
    width = 4 * b + 1
    height = 2 * b + 1
    grid = [[" "] * width for _ in range(height)]

    def pos(v: Vertex2) -> tuple[int, int]:
        return (2 * (b - v[1]), 4 * v[0] - 2 * v[1])

    for a, c in fig.edges:
        heavy = (a, c) in fig.heavy
        (r1, c1), (r2, c2) = pos(a), pos(c)
        if r1 == r2:
            for col in range(min(c1, c2) + 1, max(c1, c2)):
                grid[r1][col] = "=" if heavy else "-"
        else:
            mid_r, mid_c = (r1 + r2) // 2, (c1 + c2) // 2
            rising = (c2 - c1) * (r1 - r2) > 0
            grid[mid_r][mid_c] = ("/" if rising else "\\") if heavy else ("," if rising else "`")
    for v in fig.vertices:
        r, c = pos(v)
        grid[r][c] = "@" if v in fig.highlighted else "o"
    lines = [f"{fig.mode.title()}, n1 <= {b}, vertex (n1,n2) at row n2 (top = {b}), column 4*n1 - 2*n2"]
    lines += ["".join(row).rstrip() for row in grid]
    lines += LEGEND
    lines.append("highlighted: " + " ".join(f"({v[0]},{v[1]})" for v in sorted(fig.highlighted)))
    lines.append("heavy edges: " + " ".join(f"({a[0]},{a[1]})-({c[0]},{c[1]})" for a, c in sorted(fig.heavy)))
    if fig.labels:
        lines.append("labels:")
        lines += [f"  ({v[0]},{v[1]}) {fig.labels[v]}" for v in sorted(fig.labels)]
    return "\n".join(lines) + "\n"


def render_chamber(ctx: Context, mode: Mode | str, bound: int, fmt: str = "svg") -> str:
    fig = build_figure(ctx, mode, bound)
    if fmt == "svg":
        return render_svg(fig)
    if fmt == "ascii":
        return render_ascii(fig)
    raise ValidationError(f"format must be svg or ascii, got {fmt!r}")


# --------------------------------------------------------------------------
# Figure 2 fixtures


def load_figure2() -> dict:
    with resources.files("drinfeld_bt").joinpath("data/figure2.json").open(encoding="utf-8") as fh:
        return json.load(fh)


def _tikz_to_n(p: Sequence[float]) -> tuple[Fraction, Fraction]:
    x, y = Fraction(p[0]).limit_denominator(2), Fraction(p[1]).limit_denominator(2)
    return (x + y / 2, y)


def _segment_points(a, b) -> list[Vertex2]:
    if a[0].denominator != 1 or a[1].denominator != 1:
        a, b = b, a
    d1, d2 = b[0] - a[0], b[1] - a[1]
    step = (0 if d1 == 0 else (1 if d1 > 0 else -1), 0 if d2 == 0 else (1 if d2 > 0 else -1))
    length = max(abs(d1), abs(d2))
    return [(int(a[0]) + t * step[0], int(a[1]) + t * step[1]) for t in range(int(length) + 1)]


def figure2_fixture(k: int, bound: int) -> tuple[set[Vertex2], set[tuple[Vertex2, Vertex2]]]:
    """Heavy vertices and edges of the W(k) picture, clipped to n1 <= bound."""
    data = load_figure2()
    polys = data["polylines"].get(str(k))
    if polys is None:
        raise ValidationError(f"no figure fixture for k={k}")
    verts: set[Vertex2] = set()
    edges: set[tuple[Vertex2, Vertex2]] = set()
    for poly in polys:
        pts = [_tikz_to_n(p) for p in poly]
        for a, b in zip(pts, pts[1:]):
            seg = _segment_points(a, b)
            for u, v in zip(seg, seg[1:]):
                if u[0] <= bound and v[0] <= bound:
                    edges.add(_edge_key(u, v))
            verts.update(u for u in seg if u[0] <= bound)
    return verts, edges
