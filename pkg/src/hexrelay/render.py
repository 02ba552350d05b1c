"""SVG drawing of a placement: lattice cells, coverage hexagons, tree edges."""

from __future__ import annotations

import math
from xml.sax.saxutils import quoteattr

from .hcs import HexCoord, hexagon_vertices, to_cartesian
from .placement import Placement

# skip the background cell lattice beyond this many cells
CELL_DRAW_CAP = 4000

_STYLE = """
.cell { fill: none; stroke: #d8d8d8; stroke-width: 0.15; }
.an-disk { fill: none; stroke: #b0c4de; stroke-width: 0.3; stroke-dasharray: 2 2; }
.an-hex.gateway { fill: #1f77b415; stroke: #1f77b4; stroke-width: 0.6; }
.an-hex.intermediate { fill: #d6272815; stroke: #d62728; stroke-width: 0.6; }
.tree-edge { stroke: #333333; stroke-width: 0.8; }
.node.gateway { fill: #1f77b4; }
.node.intermediate { fill: #d62728; }
"""


def _poly(points, cls) -> str:
    txt = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
    return f'<polygon class={quoteattr(cls)} points="{txt}"/>'


def render_svg(placement: Placement, draw_cells: bool = True) -> str:
    """Serialize the placement as a standalone SVG 1.1 document."""
    frame = placement.frame
    r = frame.r
    big_r = frame.lam * r
    xs = [nd.cart[0] for nd in placement.nodes]
    ys = [nd.cart[1] for nd in placement.nodes]
    pad = big_r * 1.2
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad

    def pt(p):
        # svg y grows downward
        return (p[0], y1 + y0 - p[1])

    parts = []
    scale = max(x1 - x0, y1 - y0)
    parts.append(
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{x0:.2f} {y0:.2f} {x1 - x0:.2f} {y1 - y0:.2f}" '
        f'width="800" height="{800 * (y1 - y0) / scale:.0f}">'
    )
    parts.append(f"<style>{_STYLE.replace('0.15', f'{scale / 4000:.3f}')}</style>")

    if draw_cells:
        step = math.sqrt(3.0) * r
        ylo = math.ceil((y0 - frame.origin[1]) / (1.5 * r))
        yhi = math.floor((y1 - frame.origin[1]) / (1.5 * r))
        rows = []
        count = 0
        for cy in range(ylo, yhi + 1):
            xlo = math.ceil((x0 - frame.origin[0]) / step - cy / 2.0)
            xhi = math.floor((x1 - frame.origin[0]) / step - cy / 2.0)
            count += max(0, xhi - xlo + 1)
            if count > CELL_DRAW_CAP:
                rows = []
                break
            rows.extend(HexCoord(cx, cy) for cx in range(xlo, xhi + 1))
        for cell in rows:
            verts = hexagon_vertices(to_cartesian(cell, frame), r)
            parts.append(_poly([pt(v) for v in verts], "cell"))

    id_pos = {nd.id: nd.cart for nd in placement.nodes}
    for u, v in placement.edges:
        (ux, uy), (vx, vy) = pt(id_pos[u]), pt(id_pos[v])
        parts.append(
            f'<line class="tree-edge" x1="{ux:.2f}" y1="{uy:.2f}" '
            f'x2="{vx:.2f}" y2="{vy:.2f}"/>'
        )

    for nd in placement.nodes:
        center = nd.cart
        parts.append(
            f'<circle class="an-disk" cx="{pt(center)[0]:.2f}" cy="{pt(center)[1]:.2f}" '
            f'r="{big_r:.2f}"/>'
        )
        parts.append(
            _poly([pt(v) for v in hexagon_vertices(center, big_r)], f"an-hex {nd.kind}")
        )
        parts.append(
            f'<circle class="node {nd.kind}" cx="{pt(center)[0]:.2f}" '
            f'cy="{pt(center)[1]:.2f}" r="{max(r, scale / 200):.2f}"/>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
