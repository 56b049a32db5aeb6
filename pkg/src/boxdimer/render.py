"""Static SVG pictures of tilings, double-box classes and double-dimer configs.

Every function consumes the JSON dumps produced elsewhere in the package, so
the renderer can be pointed at cached results without recomputation.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import quoteattr

from . import hexlattice as hx
from .planepart import PlanePartition, to_matching

SCALE = 40.0
LOZENGE_FILL = {hx.X: "#c9d6e3", hx.Y: "#8fa7bf", hx.Z: "#eef2f6"}
NODE_FILL = {"red": "#d62728", "green": "#2ca02c", "blue": "#1f77b4"}


class SchemaError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _require(data: dict, key: str, path: str = "$"):
    if not isinstance(data, dict) or key not in data:
        raise SchemaError(f"{path}.{key}", "missing")
    return data[key]


class _Canvas:
    def __init__(self) -> None:
        self.items: list[str] = []
        self.xs: list[float] = []
        self.ys: list[float] = []

    def _pt(self, x: float, y: float) -> tuple[float, float]:
        px, py = x * SCALE, -y * SCALE
        self.xs.append(px)
        self.ys.append(py)
        return px, py

    def polygon(self, pts, fill: str, cls: str, stroke: str = "#333",
                width: float = 1.0) -> None:
        coords = " ".join("%.2f,%.2f" % self._pt(x, y) for x, y in pts)
        self.items.append(f'<polygon class={quoteattr(cls)} points="{coords}" '
                          f'fill="{fill}" stroke="{stroke}" stroke-width="{width}"/>')

    def line(self, p, q, stroke: str, width: float, cls: str) -> None:
        (x1, y1), (x2, y2) = self._pt(*p), self._pt(*q)
        self.items.append(f'<line class={quoteattr(cls)} x1="{x1:.2f}" y1="{y1:.2f}" '
                          f'x2="{x2:.2f}" y2="{y2:.2f}" stroke="{stroke}" '
                          f'stroke-width="{width}" stroke-linecap="round"/>')

    def circle(self, p, r: float, fill: str, cls: str) -> None:
        x, y = self._pt(*p)
        self.items.append(f'<circle class={quoteattr(cls)} cx="{x:.2f}" cy="{y:.2f}" '
                          f'r="{r:.2f}" fill="{fill}" stroke="#000"/>')

    def svg(self, title: str) -> str:
        pad = SCALE
        x0, x1 = min(self.xs, default=0) - pad, max(self.xs, default=0) + pad
        y0, y1 = min(self.ys, default=0) - pad, max(self.ys, default=0) + pad
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" '
                f'viewBox="{x0:.2f} {y0:.2f} {x1 - x0:.2f} {y1 - y0:.2f}" '
                f'width="{x1 - x0:.0f}" height="{y1 - y0:.0f}">')
        return "\n".join([head, f"<title>{title}</title>", *self.items, "</svg>\n"])


def _tri_center(t) -> tuple[float, float]:
    pts = [hx.screen(*p) for p in hx.triangle_corners(t)]
    return (sum(p[0] for p in pts) / 3, sum(p[1] for p in pts) / 3)


def _lozenge(e) -> list[tuple[float, float]]:
    a, b = hx.edge_ends(e)
    p, q = hx.edge_points(e)
    apex_a = next(c for c in hx.triangle_corners(a) if c not in (p, q))
    apex_b = next(c for c in hx.triangle_corners(b) if c not in (p, q))
    return [hx.screen(*c) for c in (p, apex_a, q, apex_b)]


def svg_plane_partition(data: dict, n: int | None = None) -> str:
    """Lozenge tiling of a plane partition, walls and floor included."""
    pp = PlanePartition.from_json(data)
    if n is None:
        n = int(data.get("n", 0)) or max([1] + [max(b) + 1 for b in pp.relative()])
    canvas = _Canvas()
    for e in sorted(to_matching(pp, n)):
        canvas.polygon(_lozenge(e), LOZENGE_FILL[e[2]], f"lozenge kind{e[2]}")
    return canvas.svg(f"plane partition of volume {pp.volume} in the {n}-box")


# cube faces visible from (1,1,1): the three faces through the far corner
_FACES = (
    ((1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 0, 1)),
    ((0, 1, 0), (1, 1, 0), (1, 1, 1), (0, 1, 1)),
    ((0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)),
)
_SHADE = (0.85, 0.7, 1.0)


def _shade(hex_color: str, f: float) -> str:
    r, g, b = (int(hex_color[i:i + 2], 16) for i in (1, 3, 5))
    return "#%02x%02x%02x" % tuple(int(min(255, c * f)) for c in (r, g, b))


def svg_double_box(data: dict) -> str:
    """Boxes of a double-box class, coloured by type; moveable ones outlined."""
    path = "$"
    type1 = _require(data, "type1", path)
    type2 = _require(data, "type2", path)
    type3 = _require(data, "type3", path)
    if not isinstance(type1, list) or len(type1) != 3:
        raise SchemaError(f"{path}.type1", "expected three box lists")
    moveable = {tuple(b) for b in data.get("moveable", [])}
    boxes = []
    palette1 = ("#f4c7a1", "#b7dcb0", "#c7c1e6")
    for m, bs in enumerate(type1):
        boxes += [(tuple(b), palette1[m], f"box type1 eta{m + 1}") for b in bs]
    boxes += [(tuple(b), "#9ecae1", "box type2") for b in type2]
    boxes += [(tuple(b), "#08306b", "box type3") for b in type3]
    canvas = _Canvas()
    # painter's order: far boxes first
    for box, color, cls in sorted(boxes, key=lambda x: sum(x[0])):
        hl = box in moveable
        for face, f in zip(_FACES, _SHADE):
            pts = [hx.screen(*hx.project(box[0] + d[0], box[1] + d[1], box[2] + d[2]))
                   for d in face]
            canvas.polygon(pts, _shade(color, f), cls + (" moveable" if hl else ""),
                           stroke="#ff7f0e" if hl else "#222", width=3 if hl else 1)
    w = data.get("weight", "?")
    return canvas.svg(f"double-box class of weight {w}")


def svg_double_dimer(data: dict) -> str:
    """H(n) with doubled edges, loops, paths and coloured nodes."""
    n = int(_require(data, "n"))
    center = tuple(_require(data, "center"))
    edges = _require(data, "edges")
    g = hx.build(n, center)
    canvas = _Canvas()
    for e in g.edges:
        a, b = hx.edge_ends(e)
        canvas.line(_tri_center(a), _tri_center(b), "#dddddd", 1, "graph-edge")
    for i, item in enumerate(edges):
        key = tuple(_require(item, "key", f"$.edges[{i}]"))
        m = int(_require(item, "multiplicity", f"$.edges[{i}]"))
        a, b = hx.edge_ends(key)
        if m == 2:
            canvas.line(_tri_center(a), _tri_center(b), "#555555", 6, "doubled")
        else:
            canvas.line(_tri_center(a), _tri_center(b), "#111111", 3, "single")
    nodes = data.get("nodes", {})
    for color in ("red", "green", "blue"):
        for t in nodes.get(color, []):
            canvas.circle(_tri_center(tuple(t)), 0.18, NODE_FILL[color], f"node {color}")
    for t in nodes.get("unlabelled", []):
        canvas.circle(_tri_center(tuple(t)), 0.18, "#ffffff", "node")
    return canvas.svg(f"double-dimer configuration on H({n})")


def hexagon_outline(n: int) -> list[tuple[float, float]]:
    return [(n * math.cos(math.pi / 6 + k * math.pi / 3),
             n * math.sin(math.pi / 6 + k * math.pi / 3)) for k in range(6)]
