"""Renderers: DOT for flip digraphs, SVG for 2-dimensional cubillages, CSV
for count tables and JSON for the trellis incidence structure.

All output is a deterministic function of its input document.
"""
from __future__ import annotations

import csv
import io
import json
from typing import Iterable

from lxml import etree

from .digraph import FlipDigraph
from .errors import PreconditionError
from .flips import FlipKind
from .geometry import Frame, frame_default, placement, vertex_point
from .inversion import InversionSet, trellis

# mirrors the arrow typography ->, =>, and the thick barrel arrow
EDGE_STYLES: dict[FlipKind, str] = {
    FlipKind.TYPE_A: 'style="solid"',
    FlipKind.SIMPLE: 'style="solid"',
    FlipKind.DOUBLE: 'color="black:invis:black"',
    FlipKind.BARREL: 'style="bold", penwidth=3',
}


def _node_label(q: InversionSet) -> str:
    if not q.members:
        return "{}"
    return ",".join(f.label() for f in q.sorted_members())


def to_dot(g: FlipDigraph, *, name: str | None = None) -> str:
    title = name or f"{'SQ' if g.cls == 'symmetric' else 'Q'}_{g.n}_{g.d}"
    lines = [f'digraph "{title}" {{', "  rankdir=LR;", "  node [shape=box, fontsize=10];"]
    for i, q in enumerate(g.nodes):
        lines.append(f'  n{i} [label="{i}: {_node_label(q)}"];')
    for e in g.edges:
        lines.append(f"  n{e.src} -> n{e.dst} [{EDGE_STYLES[e.kind]}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    text = f"{float(v):.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


SVG_NS = "http://www.w3.org/2000/svg"


def _tag(name: str) -> str:
    return f"{{{SVG_NS}}}{name}"


def to_svg(q: InversionSet, frame: Frame | None = None, *, scale: int = 40) -> str:
    """Rhombus tiling of ``Z(n, 2)``, one polygon per cube placed at its base vertex."""
    if q.d != 2:
        raise PreconditionError(f"SVG rendering needs d=2, got d={q.d}")
    frame = frame or frame_default(q.n, 2)
    p = placement(q)
    polys = []
    for D, base in sorted(p.bases.items()):
        a, b = D.members
        corners = [base, base.with_color(a), base.with_color(a).with_color(b), base.with_color(b)]
        pts = [vertex_point(frame, c) for c in corners]
        polys.append((D, [(x * scale, -y * scale) for x, y in pts]))

    xs = [x for _, pts in polys for x, _ in pts]
    ys = [y for _, pts in polys for _, y in pts]
    pad = scale // 2
    min_x, min_y = min(xs) - pad, min(ys) - pad
    width, height = max(xs) - min_x + pad, max(ys) - min_y + pad

    root = etree.Element(
        _tag("svg"),
        nsmap={None: SVG_NS},
        width=_fmt(width),
        height=_fmt(height),
        viewBox=f"{_fmt(min_x)} {_fmt(min_y)} {_fmt(width)} {_fmt(height)}",
    )
    title = etree.SubElement(root, _tag("title"))
    title.text = f"cubillage of Z({q.n},2): {_node_label(q)}"
    group = etree.SubElement(root, _tag("g"), stroke="black", fill="none")
    group.set("stroke-width", "1")
    for D, pts in polys:
        poly = etree.SubElement(
            group, _tag("polygon"), points=" ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
        )
        poly.set("data-type", D.label())
    return etree.tostring(root, pretty_print=True, encoding="unicode")


def counts_csv(rows: Iterable[tuple[int, int, str, int]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "d", "class", "count"])
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def trellis_json(n: int, d: int) -> str:
    """Vertices ``Gr([n], d+1)``, sticks ``Gr([n], d+2)`` and their incidences."""
    t = trellis(n, d)
    obj = {
        "n": n,
        "d": d,
        "vertices": [list(f.members) for f in t.packets],
        "sticks": [
            {"packet": list(g.members), "vertices": list(verts)}
            for g, verts in zip(t.sticks, t.stick_vertices)
        ],
    }
    return json.dumps(obj, separators=(",", ":"))
