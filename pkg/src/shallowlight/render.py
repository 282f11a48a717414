"""Static SVG rendering of instances and trees.

Output is a standalone SVG document: tree edges as thin lines under the
points, input points as filled circles, Steiner points with a distinct fill,
and the source enlarged. World y points up, SVG y points down, so the world is
mirrored once during projection.
"""

from __future__ import annotations

import numpy as np

CANVAS_W = 800.0
POINT_R = 2.5
STEINER_R = 2.0
SOURCE_R = 5.0
INPUT_FILL = "#1f6fb4"
STEINER_FILL = "#e66b1e"
SOURCE_FILL = "#c22f2f"
EDGE_STROKE = "#8892a0"


def _fmt(v: float) -> str:
    return format(float(v), ".2f")


def render_svg(instance, tree=None) -> str:
    pts = [instance.points]
    if tree is not None:
        pts.append(tree.xy)
    allp = np.vstack(pts)
    lo = allp.min(axis=0)
    hi = allp.max(axis=0)
    span = np.maximum(hi - lo, 1e-12)
    margin = 0.05 * float(span.max())
    lo = lo - margin
    hi = hi + margin
    span = hi - lo
    scale = CANVAS_W / float(span[0])
    canvas_h = float(span[1]) * scale

    def proj(p):
        return ((float(p[0]) - lo[0]) * scale,
                (hi[1] - float(p[1])) * scale)  # mirror: world y up, svg y down

    rows = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{_fmt(CANVAS_W)}" height="{_fmt(canvas_h)}" '
        f'viewBox="0 0 {_fmt(CANVAS_W)} {_fmt(canvas_h)}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if tree is not None:
        rows.append(f'<g stroke="{EDGE_STROKE}" stroke-width="1" stroke-linecap="round">')
        for u, v in tree.edge_list().tolist():
            x1, y1 = proj(tree.xy[u])
            x2, y2 = proj(tree.xy[v])
            rows.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
                        f'x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')
        rows.append("</g>")
        from .graphcore import KIND_STEINER
        steiner = np.flatnonzero(tree.kind == KIND_STEINER)
        if steiner.size:
            rows.append(f'<g fill="{STEINER_FILL}">')
            for v in steiner.tolist():
                x, y = proj(tree.xy[v])
                rows.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{STEINER_R}"/>')
            rows.append("</g>")
    rows.append(f'<g fill="{INPUT_FILL}">')
    for i in range(instance.n):
        if i == instance.source_index:
            continue
        x, y = proj(instance.points[i])
        rows.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{POINT_R}"/>')
    rows.append("</g>")
    sx, sy = proj(instance.source)
    rows.append(f'<circle cx="{_fmt(sx)}" cy="{_fmt(sy)}" r="{SOURCE_R}" '
                f'fill="{SOURCE_FILL}"/>')
    rows.append("</svg>")
    return "\n".join(rows) + "\n"


def write_svg(path: str, instance, tree=None) -> None:
    with open(path, "w", encoding="ascii") as f:
        f.write(render_svg(instance, tree))
