"""Plane partitions as finite sets of unit boxes, and the folklore bijection.

A box ``(i, j, k)`` is the unit cube with minimal corner ``(i, j, k)``.  A
plane partition based at ``p`` is a finite set of boxes in the octant
``p + N^3`` closed under stepping towards ``p`` along any axis.

Arrays are read with the nonincreasing convention ``pi[i][j] >= pi[i][j+1]``
and ``pi[i][j] >= pi[i+1][j]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import hexlattice as hx
from .hexlattice import Edge, HexGraph, Point, X, Y, Z

Box = tuple[int, int, int]
ORIGIN: Box = (0, 0, 0)


def is_order_ideal(boxes: Iterable[Box], basepoint: Box = ORIGIN) -> bool:
    bs = set(boxes)
    for (i, j, k) in bs:
        rel = (i - basepoint[0], j - basepoint[1], k - basepoint[2])
        if min(rel) < 0:
            return False
        if rel[0] > 0 and (i - 1, j, k) not in bs:
            return False
        if rel[1] > 0 and (i, j - 1, k) not in bs:
            return False
        if rel[2] > 0 and (i, j, k - 1) not in bs:
            return False
    return True


@dataclass(frozen=True)
class PlanePartition:
    boxes: frozenset
    basepoint: Box = ORIGIN

    def __post_init__(self) -> None:
        object.__setattr__(self, "boxes", frozenset(tuple(b) for b in self.boxes))
        object.__setattr__(self, "basepoint", tuple(self.basepoint))
        if not is_order_ideal(self.boxes, self.basepoint):
            raise ValueError("boxes do not form a plane partition at "
                             f"{self.basepoint}")

    @property
    def volume(self) -> int:
        return len(self.boxes)

    def relative(self) -> frozenset:
        bx, by, bz = self.basepoint
        return frozenset((i - bx, j - by, k - bz) for i, j, k in self.boxes)

    def translate(self, basepoint: Box) -> "PlanePartition":
        bx, by, bz = basepoint
        return PlanePartition(
            frozenset((i + bx, j + by, k + bz) for i, j, k in self.relative()),
            basepoint)

    def fits_in(self, a: int, b: int | None = None, c: int | None = None) -> bool:
        b = a if b is None else b
        c = a if c is None else c
        return all(i < a and j < b and k < c for i, j, k in self.relative())

    def sorted_boxes(self) -> list[Box]:
        return sorted(self.boxes)

    # -- array form -------------------------------------------------------

    @classmethod
    def from_array(cls, rows: Sequence[Sequence[int]],
                   basepoint: Box = ORIGIN) -> "PlanePartition":
        bx, by, bz = basepoint
        boxes = {(bx + i, by + j, bz + k)
                 for i, row in enumerate(rows)
                 for j, h in enumerate(row)
                 for k in range(h)}
        return cls(frozenset(boxes), basepoint)

    def to_array(self) -> list[list[int]]:
        rel = self.relative()
        if not rel:
            return []
        ni = 1 + max(i for i, _, _ in rel)
        nj = 1 + max(j for _, j, _ in rel)
        arr = [[0] * nj for _ in range(ni)]
        for i, j, _ in rel:
            arr[i][j] += 1
        return arr

    def to_json(self) -> dict:
        return {"basepoint": list(self.basepoint),
                "boxes": [list(b) for b in self.sorted_boxes()]}

    @classmethod
    def from_json(cls, data: dict) -> "PlanePartition":
        return cls(frozenset(tuple(b) for b in data["boxes"]),
                   tuple(data.get("basepoint", ORIGIN)))


# -- enumeration ------------------------------------------------------------

def _addable(boxes: frozenset) -> set[Box]:
    cands = {ORIGIN}
    for (i, j, k) in boxes:
        cands.update({(i + 1, j, k), (i, j + 1, k), (i, j, k + 1)})
    return {b for b in cands if b not in boxes and _predecessors_present(b, boxes)}


def _predecessors_present(b: Box, boxes: frozenset) -> bool:
    i, j, k = b
    return ((i == 0 or (i - 1, j, k) in boxes)
            and (j == 0 or (i, j - 1, k) in boxes)
            and (k == 0 or (i, j, k - 1) in boxes))


def _max_removable(boxes: frozenset) -> Box:
    return max(b for b in boxes
               if (b[0] + 1, b[1], b[2]) not in boxes
               and (b[0], b[1] + 1, b[2]) not in boxes
               and (b[0], b[1], b[2] + 1) not in boxes)


def enumerate_by_volume(max_volume: int) -> Iterator[PlanePartition]:
    """Every plane partition at the origin with volume <= max_volume, once each.

    Reverse search: the parent of a partition removes its lexicographically
    largest removable box, so a child is only kept when the box just added is
    that box.  No table of seen partitions is needed.
    """
    if max_volume < 0:
        return

    def rec(boxes: frozenset) -> Iterator[frozenset]:
        yield boxes
        if len(boxes) == max_volume:
            return
        for b in sorted(_addable(boxes)):
            child = boxes | {b}
            if _max_removable(child) == b:
                yield from rec(child)

    for boxes in rec(frozenset()):
        yield PlanePartition(boxes)


def enumerate_boxed(a: int, b: int, c: int) -> Iterator[PlanePartition]:
    """Every plane partition inside the a x b x c box, as height arrays."""
    if min(a, b, c) < 0:
        raise ValueError("box sides must be nonnegative")

    def rows(i: int, above: tuple[int, ...]) -> Iterator[list[tuple[int, ...]]]:
        if i == a:
            yield []
            return
        for row in _bounded_rows(above):
            for rest in rows(i + 1, row):
                yield [row] + rest

    for arr in rows(0, (c,) * b):
        yield PlanePartition.from_array(arr)


def _bounded_rows(bound: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Nonincreasing tuples r with r[j] <= bound[j]."""
    def rec(j: int, prev: int) -> Iterator[tuple[int, ...]]:
        if j == len(bound):
            yield ()
            return
        for h in range(min(prev, bound[j]), -1, -1):
            for tail in rec(j + 1, h):
                yield (h,) + tail

    yield from rec(0, max(bound) if bound else 0)


def volume_counts(pps: Iterable[PlanePartition], max_volume: int) -> list[int]:
    counts = [0] * (max_volume + 1)
    for pp in pps:
        if pp.volume <= max_volume:
            counts[pp.volume] += 1
    return counts


# -- lifting to the stepped surface -----------------------------------------

def surface_height(p: Point, boxes: frozenset, basepoint: Box) -> int:
    """Position along (1,1,1) of the stepped surface over lattice point p.

    Along the line of cubes (u+t, v+t, t), cubes outside the room or inside
    the partition are filled; the surface sits at the first empty cube.
    """
    u, v = p
    bx, by, bz = basepoint
    t = max(bx - u, by - v, bz)
    while (u + t, v + t, t) in boxes:
        t += 1
    return t


def dimer_edges(heights, edges: Iterable[Edge]) -> set[Edge]:
    """Lattice edges that are short diagonals of lozenges of the surface.

    ``heights`` maps a lattice point to its surface height.  Along an X or Y
    edge the lift is a unit step unless the height drops by one; along a Z
    edge it is a unit step unless the heights agree.
    """
    out = set()
    for e in edges:
        p, q = hx.edge_points(e)
        d = heights(q) - heights(p)
        if (e[2] == Z and d == 0) or (e[2] != Z and d == -1):
            out.add(e)
    return out


def surface_dimers(g: HexGraph, boxes: frozenset, basepoint: Box) -> dict:
    """Dimer of every triangle of ``g`` in the infinite tiling of a room.

    Returns a map triangle -> edge.  The edge may cross the boundary of ``g``
    when the room's corner or walls are cut by the window.
    """
    cache: dict[Point, int] = {}

    def h(p: Point) -> int:
        if p not in cache:
            cache[p] = surface_height(p, boxes, basepoint)
        return cache[p]

    out = {}
    for t in g.vertices:
        chosen = dimer_edges(h, hx.triangle_edges(t))
        if len(chosen) != 1:
            raise AssertionError(f"triangle {t} has {len(chosen)} dimers")
        out[t] = chosen.pop()
    return out


def to_matching(pp: PlanePartition, n: int, center: Point | None = None) -> frozenset:
    """Perfect matching of H(n) given by the lozenge tiling of ``pp``.

    H(n) is the projection of ``basepoint + [0, n]^3``; its centre defaults
    to the projection of the basepoint.
    """
    if not pp.fits_in(n):
        raise ValueError(f"plane partition does not fit in the {n}-box")
    if center is None:
        center = hx.project(*pp.basepoint)
    g = hx.build(n, center)
    dimers = surface_dimers(g, pp.boxes, pp.basepoint)
    m = frozenset(dimers.values())
    assert all(g.has_edge(e) for e in m)
    return m


def from_matching(m: Iterable[Edge], n: int, basepoint: Box = ORIGIN) -> PlanePartition:
    """Inverse of :func:`to_matching`: integrate the height function."""
    m = frozenset(m)
    g = hx.build(n, hx.project(*basepoint))
    if not hx.is_perfect_matching(g, m):
        raise ValueError("not a perfect matching of H(n)")
    start = g.corner("SE")
    heights = {start: surface_height(start, frozenset(), basepoint)}
    frontier = [start]
    while frontier:
        p = frontier.pop()
        for k, step in ((X, (1, 0)), (Y, (0, 1)), (Z, (1, 1))):
            for sign in (1, -1):
                q = (p[0] + sign * step[0], p[1] + sign * step[1])
                if q in heights or not g.contains_point(q):
                    continue
                lo = p if sign == 1 else q
                e = (lo[0], lo[1], k)
                if not g.has_edge(e):
                    # boundary segment: a lozenge side, never a diagonal
                    d = 0 if k != Z else -1
                elif e in m:
                    d = -1 if k != Z else 0
                else:
                    d = 0 if k != Z else -1
                heights[q] = heights[p] + sign * d
                frontier.append(q)
    bx, by, bz = basepoint
    boxes = set()
    for (u, v), t in heights.items():
        t0 = max(bx - u, by - v, bz)
        for s in range(t0, t):
            boxes.add((u + s, v + s, s))
    pp = PlanePartition(frozenset(boxes), basepoint)
    if to_matching(pp, n, g.center) != m:
        raise ValueError("matching is not the tiling of a boxed plane partition")
    return pp
