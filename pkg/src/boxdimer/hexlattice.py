"""The hexagon graph H(n) and the triangular lattice underneath it.

Coordinates
-----------
Integer points of Z^3 are projected along (1, 1, 1) onto lattice points
``(u, v) = (x - z, y - z)``.  On screen, ``+x`` points south-east, ``+y``
south-west and ``+z`` north, so one third of the lattice edges are vertical
and the dual edges crossing them are horizontal.

A lattice edge is keyed by its lower-left lattice point and a kind:

* ``X`` -- from (u, v) to (u+1, v)    (projection of a unit step in +x)
* ``Y`` -- from (u, v) to (u, v+1)    (+y)
* ``Z`` -- from (u, v) to (u+1, v+1)  (-z, i.e. pointing south)

Unit triangles are the vertices of H(n):

* ``(u, v, 0)`` has corners (u,v), (u+1,v), (u+1,v+1) and points east,
* ``(u, v, 1)`` has corners (u,v), (u,v+1), (u+1,v+1) and points west.

An edge of H(n) is identified with the lattice edge it crosses, so edge keys
double as lozenge keys: a dimer across an ``X`` edge is the lozenge that is a
face perpendicular to the x axis, and so on.  Dimers across ``Z`` edges are
the horizontal edges of H(n); they carry the gauge weight.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator

X, Y, Z = 0, 1, 2
KIND_NAMES = {X: "ne", Y: "nw", Z: "horizontal"}

Point = tuple[int, int]
Vertex = tuple[int, int, int]
Edge = tuple[int, int, int]
Matching = frozenset  # frozenset[Edge]

SIDES = ("L1", "L2", "L3", "L4", "L5", "L6")


def project(x: int, y: int, z: int) -> Point:
    return (x - z, y - z)


def screen(u: float, v: float) -> tuple[float, float]:
    """Cartesian position of a lattice point, y axis pointing north."""
    return ((u - v) * math.sqrt(3) / 2, -(u + v) / 2)


def edge_ends(e: Edge) -> tuple[Vertex, Vertex]:
    """The two triangles separated by lattice edge ``e`` (east-pointing first)."""
    u, v, k = e
    if k == X:
        return (u, v, 0), (u, v - 1, 1)
    if k == Y:
        return (u - 1, v, 0), (u, v, 1)
    return (u, v, 0), (u, v, 1)


def triangle_edges(t: Vertex) -> tuple[Edge, Edge, Edge]:
    u, v, o = t
    if o == 0:
        return (u, v, X), (u + 1, v, Y), (u, v, Z)
    return (u, v, Y), (u, v + 1, X), (u, v, Z)


def triangle_corners(t: Vertex) -> tuple[Point, Point, Point]:
    u, v, o = t
    if o == 0:
        return (u, v), (u + 1, v), (u + 1, v + 1)
    return (u, v), (u, v + 1), (u + 1, v + 1)


def edge_points(e: Edge) -> tuple[Point, Point]:
    u, v, k = e
    return (u, v), ((u + 1, v), (u, v + 1), (u + 1, v + 1))[k]


def face_triples(p: Point) -> tuple[frozenset, frozenset]:
    """Alternating dimer triples of the hexagonal face around lattice point p.

    The first triple is the concave corner (no box at p), the second the
    convex one (a box whose far corner projects to p).
    """
    u, v = p
    low = frozenset({(u, v - 1, Y), (u - 1, v, X), (u, v, Z)})
    high = frozenset({(u - 1, v - 1, Z), (u, v, Y), (u, v, X)})
    return low, high


def vertex_sort_key(t: Vertex) -> tuple[int, int]:
    u, v, o = t
    # bottom rows first (y = -(u+v+1)/2), west to east inside a row
    return (-(u + v), 3 * (u - v) + (1 if o == 0 else -1))


@dataclass(frozen=True)
class Face:
    point: Point
    low: frozenset
    high: frozenset


@dataclass(eq=False)
class HexGraph:
    """H(n) centred on a lattice point.

    Vertices are ordered bottom row first, so a scan over ``vertices`` sweeps
    the hexagon south to north.
    """

    n: int
    center: Point
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...]
    sides: dict[str, tuple[Vertex, ...]]
    index: dict[Vertex, int] = field(repr=False)
    incident: dict[Vertex, tuple[Edge, ...]] = field(repr=False)

    def rel(self, p: Point) -> Point:
        return (p[0] - self.center[0], p[1] - self.center[1])

    def contains_point(self, p: Point) -> bool:
        du, dv = self.rel(p)
        return abs(du) <= self.n and abs(dv) <= self.n and abs(du - dv) <= self.n

    def is_interior_point(self, p: Point) -> bool:
        du, dv = self.rel(p)
        return abs(du) < self.n and abs(dv) < self.n and abs(du - dv) < self.n

    def contains_vertex(self, t: Vertex) -> bool:
        return t in self.index

    def has_edge(self, e: Edge) -> bool:
        a, b = edge_ends(e)
        return a in self.index and b in self.index

    def exponent(self, e: Edge) -> int:
        """Gauge exponent r(e): row index for horizontal edges, else 0."""
        u, v, k = e
        if k != Z:
            return 0
        cu, cv = self.center
        return (cu + cv - u - v - 1) // 2 + self.n

    def matching_exponent(self, edges: Iterable[Edge]) -> int:
        return sum(self.exponent(e) for e in edges)

    def corner(self, name: str) -> Point:
        n = self.n
        rel = {"SE": (n, 0), "S": (n, n), "SW": (0, n), "NW": (-n, 0),
               "N": (-n, -n), "NE": (0, -n)}[name]
        return (self.center[0] + rel[0], self.center[1] + rel[1])

    def line_of(self, e: Edge) -> int:
        """Index of the vertical lattice line a horizontal edge crosses."""
        u, v, _ = e
        return (u - self.center[0]) - (v - self.center[1])

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "center": list(self.center),
            "vertices": [list(t) for t in self.vertices],
            "edges": [
                {"key": list(e), "ends": [list(t) for t in edge_ends(e)],
                 "direction": KIND_NAMES[e[2]], "exponent": self.exponent(e)}
                for e in self.edges
            ],
            "sides": {s: [list(t) for t in vs] for s, vs in self.sides.items()},
        }


# side name -> (start corner, end corner) walking counter-clockwise from NW
_SIDE_CORNERS = {
    "L1": ("NW", "SW"), "L2": ("SW", "S"), "L3": ("S", "SE"),
    "L4": ("SE", "NE"), "L5": ("NE", "N"), "L6": ("N", "NW"),
}


def build(n: int, center: Point = (0, 0)) -> HexGraph:
    """H(n): the dual of the side-n hexagon of the triangular lattice."""
    if n <= 0:
        raise ValueError(f"H(n) needs n >= 1, got {n}")
    cu, cv = center

    def inside(p: Point) -> bool:
        du, dv = p[0] - cu, p[1] - cv
        return abs(du) <= n and abs(dv) <= n and abs(du - dv) <= n

    verts = []
    for du in range(-n - 1, n + 1):
        for dv in range(-n - 1, n + 1):
            for o in (0, 1):
                t = (cu + du, cv + dv, o)
                if all(inside(p) for p in triangle_corners(t)):
                    verts.append(t)
    verts.sort(key=vertex_sort_key)
    index = {t: i for i, t in enumerate(verts)}

    edges = set()
    for t in verts:
        for e in triangle_edges(t):
            a, b = edge_ends(e)
            if a in index and b in index:
                edges.add(e)
    edge_list = tuple(sorted(edges, key=lambda e: (index[edge_ends(e)[0]], e[2])))
    incident = {t: tuple(e for e in triangle_edges(t) if e in edges) for t in verts}

    faces = []
    for du in range(-n + 1, n):
        for dv in range(-n + 1, n):
            if abs(du - dv) < n:
                p = (cu + du, cv + dv)
                low, high = face_triples(p)
                faces.append(Face(p, low, high))

    sides = {}
    for name, (c0, c1) in _SIDE_CORNERS.items():
        sides[name] = _side_triangles(n, center, c0, c1, index)

    return HexGraph(n, (cu, cv), tuple(verts), edge_list, tuple(faces), sides,
                    index, incident)


def _side_triangles(n, center, c0, c1, index) -> tuple[Vertex, ...]:
    """Triangles having an edge on a boundary side, ordered from c0 to c1."""
    rel = {"SE": (n, 0), "S": (n, n), "SW": (0, n), "NW": (-n, 0),
           "N": (-n, -n), "NE": (0, -n)}
    p0 = (center[0] + rel[c0][0], center[1] + rel[c0][1])
    p1 = (center[0] + rel[c1][0], center[1] + rel[c1][1])
    step = ((p1[0] - p0[0]) // n, (p1[1] - p0[1]) // n)
    out = []
    for i in range(n):
        a = (p0[0] + i * step[0], p0[1] + i * step[1])
        b = (a[0] + step[0], a[1] + step[1])
        lo = min(a, b)
        kind = {(1, 0): X, (0, 1): Y, (1, 1): Z}[(abs(step[0]), abs(step[1]))]
        e = (lo[0], lo[1], kind)
        inner = [t for t in edge_ends(e) if t in index]
        assert len(inner) == 1
        out.append(inner[0])
    return tuple(out)


# -- matchings --------------------------------------------------------------

def is_perfect_matching(g: HexGraph, m: Iterable[Edge],
                        uncovered: frozenset = frozenset()) -> bool:
    """True iff ``m`` covers every vertex not in ``uncovered`` exactly once."""
    seen: set = set()
    for e in m:
        if not g.has_edge(e):
            return False
        for t in edge_ends(e):
            if t in seen or t in uncovered:
                return False
            seen.add(t)
    return len(seen) + len(uncovered) == len(g.vertices)


def perfect_matchings(g: HexGraph, removed: frozenset = frozenset()) -> Iterator[Matching]:
    """All perfect matchings of ``g`` minus the vertices in ``removed``."""
    order = [t for t in g.vertices if t not in removed]
    matched: set = set(removed)
    chosen: list[Edge] = []

    def rec(i: int) -> Iterator[Matching]:
        while i < len(order) and order[i] in matched:
            i += 1
        if i == len(order):
            yield frozenset(chosen)
            return
        t = order[i]
        matched.add(t)
        for e in g.incident[t]:
            a, b = edge_ends(e)
            w = b if a == t else a
            if w in matched:
                continue
            matched.add(w)
            chosen.append(e)
            yield from rec(i + 1)
            chosen.pop()
            matched.discard(w)
        matched.discard(t)

    yield from rec(0)


def minimal_matching(g: HexGraph) -> Matching:
    """The frozen matching of the empty room: every face in its low state."""
    from .planepart import PlanePartition, to_matching

    return to_matching(PlanePartition(frozenset()), g.n, center=g.center)


def face_flip(m: Matching, f: Face) -> Matching:
    if f.low <= m:
        return (m - f.low) | f.high
    if f.high <= m:
        return (m - f.high) | f.low
    raise ValueError(f"face at {f.point} is not flippable in this matching")


def orientation_counts(m: Iterable[Edge]) -> dict[str, int]:
    counts = {name: 0 for name in KIND_NAMES.values()}
    for e in m:
        counts[KIND_NAMES[e[2]]] += 1
    return counts


# -- nodes and the tripartite pairing ---------------------------------------

@dataclass(frozen=True)
class NodeSpec:
    """Red, green and blue boundary nodes of H(n).

    ``order`` lists every node once, walking the boundary counter-clockwise
    from the north-west corner (L1, L2, ..., L6); ``colors`` gives the colour
    of each node in that order.
    """

    a: int
    b: int
    c: int
    red: tuple[Vertex, ...]
    green: tuple[Vertex, ...]
    blue: tuple[Vertex, ...]
    order: tuple[Vertex, ...]
    colors: tuple[str, ...]

    @property
    def nodes(self) -> frozenset:
        return frozenset(self.order)

    def color_of(self, t: Vertex) -> str:
        return self.colors[self.order.index(t)]

    def to_json(self) -> dict:
        return {"params": [self.a, self.b, self.c],
                "red": [list(t) for t in self.red],
                "green": [list(t) for t in self.green],
                "blue": [list(t) for t in self.blue]}


Pairing = frozenset  # frozenset[frozenset[Vertex]]


def place_nodes(g: HexGraph, a: int, b: int, c: int) -> NodeSpec:
    """Select the coloured nodes for parameters (a, b, c) on H(n).

    Along each side the nodes are the side triangles nearest the named
    corner: A = SW (red, sides L1 and L2), B = SE (green, L3 and L4),
    C = N (blue, L5 and L6).  Side triangles are the degree-two boundary
    vertices; these are exactly where the strands of the frozen three-corner
    configuration leave the hexagon.
    """
    if min(a, b, c) < 0:
        raise ValueError("a, b, c must be nonnegative")
    if max(a, b, c) > g.n:
        raise ValueError(f"H({g.n}) is too small for (a, b, c) = ({a}, {b}, {c})")
    s = g.sides
    # L1 runs NW->SW, so the nodes nearest A sit at its end; likewise L3/L6.
    l1 = s["L1"][g.n - a:] if a else ()
    l2 = s["L2"][:c]
    l3 = s["L3"][g.n - c:] if c else ()
    l4 = s["L4"][:b]
    l5 = s["L5"][g.n - b:] if b else ()
    l6 = s["L6"][:a]
    red, green, blue = l1 + l2, l3 + l4, l5 + l6
    order = l1 + l2 + l3 + l4 + l5 + l6
    colors = ("R",) * (a + c) + ("G",) * (b + c) + ("B",) * (a + b)
    return NodeSpec(a, b, c, red, green, blue, order, colors)


def tripartite_pairing(spec: NodeSpec) -> Pairing:
    """The non-crossing perfect matching of the nodes joining distinct colours.

    A stack scan pairs a node with the top of the stack whenever their colours
    differ.  The scan is tried from every rotation of the boundary order until
    one empties the stack; any such scan is non-crossing and bichromatic.
    """
    seq = list(zip(spec.order, spec.colors))
    if not seq:
        return frozenset()
    for start in range(len(seq)):
        rot = seq[start:] + seq[:start]
        stack: list = []
        pairs = []
        for node, col in rot:
            if stack and stack[-1][1] != col:
                other, _ = stack.pop()
                pairs.append(frozenset((other, node)))
            else:
                stack.append((node, col))
        if not stack:
            return frozenset(pairs)
    raise ValueError("colour counts violate the triangle inequality")


def is_noncrossing(order: tuple, pairs: Iterable[frozenset]) -> bool:
    pos = {t: i for i, t in enumerate(order)}
    spans = [tuple(sorted(pos[t] for t in p)) for p in pairs]
    for (a, b), (c, d) in itertools.combinations(spans, 2):
        if a < c < b < d or c < a < d < b:
            return False
    return True


def noncrossing_bichromatic_pairings(order: tuple, colors: tuple) -> list[Pairing]:
    """Brute force over all perfect matchings of the boundary sequence."""
    items = list(range(len(order)))
    out = []

    def rec(rest: list, acc: list) -> None:
        if not rest:
            pairs = [frozenset((order[i], order[j])) for i, j in acc]
            if is_noncrossing(order, pairs):
                out.append(frozenset(pairs))
            return
        i = rest[0]
        for j in rest[1:]:
            if colors[i] != colors[j]:
                rec([k for k in rest if k not in (i, j)], acc + [(i, j)])

    rec(items, [])
    return out
