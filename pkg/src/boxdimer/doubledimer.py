"""Double-dimer configurations on H(n) with tripartite nodes.

A configuration is a multiset of edges in which every non-node vertex is
covered twice and every node once.  It splits into doubled edges, closed
loops and node-to-node paths; the paths induce a pairing of the nodes.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from . import hexlattice as hx
from .doublebox import DoubleBoxClass, basepoints, reconstruct
from .hexlattice import Edge, HexGraph, NodeSpec, Vertex, Z
from .planepart import surface_dimers
from .qseries import QSeries

log = logging.getLogger(__name__)


class NodeConventionError(ValueError):
    """No configuration realises the tripartite pairing on this window."""


class StabilizationError(RuntimeError):
    """Window series did not settle below the configured size ceiling."""

    def __init__(self, message: str, windows: dict):
        super().__init__(message)
        self.windows = windows


class WindowTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class DoubleDimerConfig:
    n: int
    center: tuple[int, int]
    multiplicity: tuple[tuple[Edge, int], ...]
    nodes: frozenset
    doubled: tuple[Edge, ...]
    loops: tuple[tuple[Vertex, ...], ...]
    paths: tuple[tuple[Vertex, ...], ...]
    exponent: int

    @property
    def loops_count(self) -> int:
        return len(self.loops)

    @property
    def pairing(self) -> frozenset:
        return frozenset(frozenset((p[0], p[-1])) for p in self.paths)

    def edge_map(self) -> dict[Edge, int]:
        return dict(self.multiplicity)

    def horizontal_count(self) -> int:
        return sum(m for e, m in self.multiplicity if e[2] == Z)

    def to_json(self, spec: NodeSpec | None = None, base_exponent: int | None = None) -> dict:
        d = {
            "n": self.n,
            "center": list(self.center),
            "edges": [{"key": list(e), "ends": [list(t) for t in hx.edge_ends(e)],
                       "multiplicity": m} for e, m in self.multiplicity],
            "doubled": [list(e) for e in self.doubled],
            "loops": [[list(t) for t in lp] for lp in self.loops],
            "paths": [[list(t) for t in p] for p in self.paths],
            "pairing": sorted(sorted(list(t) for t in pair) for pair in self.pairing),
            "loops_count": self.loops_count,
            "exponent": self.exponent,
        }
        if base_exponent is not None:
            d["excess"] = self.exponent - base_exponent
        if spec is not None:
            d["nodes"] = spec.to_json()
        else:
            d["nodes"] = {"unlabelled": [list(t) for t in sorted(self.nodes)]}
        return d


def make_config(g: HexGraph, multiplicity: Mapping[Edge, int],
                nodes: Iterable[Vertex]) -> DoubleDimerConfig:
    """Validate the degree law and decompose an edge multiset."""
    nodes = frozenset(nodes)
    mult = {e: m for e, m in multiplicity.items() if m}
    deg: Counter = Counter()
    for e, m in mult.items():
        if not g.has_edge(e) or m not in (1, 2):
            raise ValueError(f"bad edge or multiplicity: {e} x{m}")
        for t in hx.edge_ends(e):
            deg[t] += m
    for t in g.vertices:
        want = 1 if t in nodes else 2
        if deg[t] != want:
            raise ValueError(f"vertex {t} covered {deg[t]} times, expected {want}")

    singles: dict[Vertex, list[Vertex]] = {}
    for e, m in mult.items():
        if m == 1:
            a, b = hx.edge_ends(e)
            singles.setdefault(a, []).append(b)
            singles.setdefault(b, []).append(a)

    seen: set = set()
    paths = []
    for start in sorted(nodes, key=g.index.__getitem__):
        if start in seen:
            continue
        walk = [start]
        seen.add(start)
        prev, cur = None, start
        while True:
            nxt = [w for w in singles[cur] if w != prev or len(singles[cur]) == 1]
            nxt = [w for w in nxt if w not in seen]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            walk.append(cur)
            seen.add(cur)
        paths.append(tuple(walk))
    loops = []
    for start in sorted(singles, key=g.index.__getitem__):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        cur = start
        while True:
            nxt = [w for w in singles[cur] if w not in seen]
            if not nxt:
                break
            cur = nxt[0]
            cyc.append(cur)
            seen.add(cur)
        loops.append(tuple(cyc))
    doubled = tuple(sorted(e for e, m in mult.items() if m == 2))
    exponent = sum(g.exponent(e) * m for e, m in mult.items())
    return DoubleDimerConfig(g.n, g.center, tuple(sorted(mult.items())), nodes,
                             doubled, tuple(loops), tuple(paths), exponent)


# -- rigidity ---------------------------------------------------------------

def horizontal_line_counts(g: HexGraph, nodes: frozenset) -> dict[int, int]:
    """Forced multiplicity of horizontal edges across each vertical line.

    In the strip between lines k and k+1 every X or Y edge joins an
    east-pointing triangle (on line k) to a west-pointing one (on line k+1),
    so the degree sums of the two colour classes in the strip differ exactly
    by the horizontal counts across the two lines.
    """
    need = {t: (1 if t in nodes else 2) for t in g.vertices}
    east: Counter = Counter()
    west: Counter = Counter()
    for t in g.vertices:
        line = (t[0] - g.center[0]) - (t[1] - g.center[1])
        if t[2] == 0:
            east[line] += need[t]
        else:
            west[line] += need[t]
    counts = {-g.n: 0}
    for k in range(-g.n, g.n):
        counts[k + 1] = counts[k] + west[k + 1] - east[k]
    return counts


# -- search -----------------------------------------------------------------

@dataclass
class SearchStats:
    nodes_visited: int = 0
    emitted: int = 0
    pruned_exponent: int = 0


def _search(g: HexGraph, nodes: frozenset, limit: int,
            stats: SearchStats | None = None) -> Iterator[dict[Edge, int]]:
    """All edge multisets obeying the degree law with exponent <= limit.

    Vertices are visited south to north; at each vertex the multiplicities
    of its edges to later vertices are chosen to complete its degree.  Two
    cuts keep this small: a later vertex must stay completable, and the
    exponent so far plus the cheapest placement of the forced horizontal
    multiplicity still to come (two per edge, lowest rows first, per line)
    must not exceed ``limit``.
    """
    stats = stats or SearchStats()
    verts = g.vertices
    V = len(verts)
    idx = g.index
    need = [1 if t in nodes else 2 for t in verts]
    edges = list(g.edges)
    ends = [tuple(idx[t] for t in hx.edge_ends(e)) for e in edges]
    expo = [g.exponent(e) for e in edges]
    fwd: list[list[tuple[int, int]]] = [[] for _ in range(V)]
    open_count = [0] * V
    for i, (p, q) in enumerate(ends):
        lo, hi = min(p, q), max(p, q)
        fwd[lo].append((i, hi))
        open_count[lo] += 1
        open_count[hi] += 1

    line_total = horizontal_line_counts(g, nodes)
    line_rows: dict[int, list[int]] = {}
    line_of_edge: dict[int, int] = {}
    horiz = sorted((i for i, e in enumerate(edges) if e[2] == Z),
                   key=lambda i: (min(ends[i]), i))
    for i in horiz:
        line = g.line_of(edges[i])
        line_of_edge[i] = line
        line_rows.setdefault(line, []).append(expo[i])
    prefix = {k: [0] for k in line_rows}
    for k, rows in line_rows.items():
        for r in rows:
            prefix[k].append(prefix[k][-1] + r)
    pointer = {k: 0 for k in line_rows}
    assigned = {k: 0 for k in line_rows}

    INF = float("inf")

    def line_bound(k: int) -> float:
        rem = line_total.get(k, 0) - assigned[k]
        if rem < 0:
            return INF
        p = pointer[k]
        full, half = divmod(rem, 2)
        if p + full + half > len(line_rows[k]):
            return INF
        s = prefix[k]
        lb = 2 * (s[p + full] - s[p])
        if half:
            lb += line_rows[k][p + full]
        return lb

    if any(cnt and k not in line_rows for k, cnt in line_total.items()):
        return
    bounds = {k: line_bound(k) for k in line_rows}
    state = {"lb": sum(bounds.values()), "exp": 0}
    if state["lb"] > limit:
        return

    deg = [0] * V
    mult = [0] * len(edges)

    def choices(i: int) -> Iterator[tuple[int, ...]]:
        want = need[i] - deg[i]
        opts = fwd[i]

        def rec(j: int, left: int) -> Iterator[tuple[int, ...]]:
            if j == len(opts):
                if left == 0:
                    yield ()
                return
            _, w = opts[j]
            cap = min(2, left, need[w] - deg[w])
            # the remaining options must be able to absorb what is left
            for m in range(cap, -1, -1):
                if left - m > 2 * (len(opts) - j - 1):
                    break
                for tail in rec(j + 1, left - m):
                    yield (m,) + tail

        if want < 0:
            return
        yield from rec(0, want)

    def dfs(i: int) -> Iterator[dict[Edge, int]]:
        stats.nodes_visited += 1
        if i == V:
            stats.emitted += 1
            yield {edges[k]: mult[k] for k in range(len(edges)) if mult[k]}
            return
        for combo in choices(i):
            ok = True
            touched_lines = []
            saved_lb = state["lb"]
            saved_exp = state["exp"]
            for (e, w), m in zip(fwd[i], combo):
                mult[e] = m
                deg[i] += m
                deg[w] += m
                open_count[w] -= 1
                if deg[w] + 2 * open_count[w] < need[w]:
                    ok = False
                if e in line_of_edge:
                    k = line_of_edge[e]
                    assigned[k] += m
                    pointer[k] += 1
                    state["exp"] += expo[e] * m
                    touched_lines.append((k, bounds[k]))
            open_count[i] -= len(fwd[i])
            if ok:
                lb = state["lb"]
                for k, old in touched_lines:
                    new = line_bound(k)
                    bounds[k] = new
                    lb += new - old
                state["lb"] = lb
                if state["exp"] + lb > limit:
                    stats.pruned_exponent += 1
                elif deg[i] == need[i]:
                    yield from dfs(i + 1)
            else:
                for k, _ in touched_lines:
                    bounds[k] = line_bound(k)
            # undo
            open_count[i] += len(fwd[i])
            for (e, w), m in zip(fwd[i], combo):
                mult[e] = 0
                deg[i] -= m
                deg[w] -= m
                open_count[w] += 1
                if e in line_of_edge:
                    k = line_of_edge[e]
                    assigned[k] -= m
                    pointer[k] -= 1
            for k, old in touched_lines:
                bounds[k] = old
            state["lb"] = saved_lb
            state["exp"] = saved_exp

    yield from dfs(0)


def enumerate_configs(g: HexGraph, nodes: frozenset, max_exponent: int,
                      stats: SearchStats | None = None) -> Iterator[DoubleDimerConfig]:
    """Every configuration with the given node set and exponent <= max_exponent."""
    for mult in _search(g, frozenset(nodes), max_exponent, stats):
        yield make_config(g, mult, nodes)


def enumerate_ddc(g: HexGraph, spec: NodeSpec, max_excess: int,
                  base_exponent: int | None = None,
                  stats: SearchStats | None = None) -> Iterator[DoubleDimerConfig]:
    """Configurations with pairing sigma_{a,b,c} and excess <= max_excess.

    Excess is measured from ``base_exponent``, by default the exponent of the
    frozen configuration of the window (see :func:`minimal_config`).
    """
    if base_exponent is None:
        base_exponent = frozen_config(g, spec).exponent
    sigma = hx.tripartite_pairing(spec)
    for cfg in enumerate_configs(g, spec.nodes, base_exponent + max_excess, stats):
        if cfg.pairing == sigma:
            yield cfg


# -- the frozen configuration and the map from double-box classes -----------

def window(a: int, b: int, c: int, n: int) -> HexGraph:
    """H(n) centred on the projection of (a, b, c)."""
    if max(a, b, c) > n:
        raise WindowTooSmall(f"H({n}) cannot hold the basepoints of ({a},{b},{c})")
    return hx.build(n, hx.project(a, b, c))


def superpose(g: HexGraph, etas: tuple[frozenset, frozenset, frozenset],
              params: tuple[int, int, int], inner: frozenset) -> tuple[dict, frozenset]:
    """Overlay three room tilings and remove the tiling of ``inner``.

    Returns the internal edge multiset and the vertices whose net dimer
    leaves the window (the nodes).
    """
    count: Counter = Counter()
    for boxes, bp in zip(etas, basepoints(*params)):
        for e in set(surface_dimers(g, boxes, bp).values()):
            count[e] += 1
    for e in set(surface_dimers(g, inner, params).values()):
        count[e] -= 1
    if any(m < 0 for m in count.values()):
        raise AssertionError("inner tiling is not contained in the overlay")
    internal = {e: m for e, m in count.items() if m and g.has_edge(e)}
    crossing: Counter = Counter()
    for e, m in count.items():
        if m and not g.has_edge(e):
            for t in hx.edge_ends(e):
                if t in g.index:
                    crossing[t] += m
    if any(m != 1 for m in crossing.values()):
        raise WindowTooSmall("a doubled dimer leaves the window")
    return internal, frozenset(crossing)


def frozen_config(g: HexGraph, spec: NodeSpec) -> DoubleDimerConfig:
    """Image of the empty double-box class on the window ``g``."""
    params = (spec.a, spec.b, spec.c)
    if g.center != hx.project(*params):
        g = window(*params, g.n)
    internal, nodes = superpose(g, (frozenset(),) * 3, params, frozenset())
    if nodes != spec.nodes:
        raise NodeConventionError("frozen configuration leaves the window away "
                                  "from the placed nodes")
    return make_config(g, internal, nodes)


def minimal_config(a: int, b: int, c: int, n: int) -> tuple[DoubleDimerConfig, NodeSpec]:
    g = window(a, b, c, n)
    spec = hx.place_nodes(g, a, b, c)
    return frozen_config(g, spec), spec


def dbc_to_ddc(cls: DoubleBoxClass, representative, n: int) -> DoubleDimerConfig:
    """Overlay the tilings of a representative triple and strip the inner one."""
    params = cls.typing.params
    g = window(*params, n)
    etas = reconstruct(cls.typing, tuple(representative))
    for eta in etas:
        for (i, j, k) in eta:
            if not g.is_interior_point(hx.project(i, j, k)):
                raise WindowTooSmall(f"box {(i, j, k)} reaches the edge of H({n})")
    internal, nodes = superpose(g, etas, params, cls.typing.intersection)
    return make_config(g, internal, nodes)


# -- generating functions ---------------------------------------------------

@dataclass
class WindowResult:
    series: QSeries
    base_exponent: int
    configs: list = field(default_factory=list, repr=False)
    stats: SearchStats = field(default_factory=SearchStats)


def zddc_window_details(a: int, b: int, c: int, n: int, trunc_order: int,
                        keep_configs: bool = False,
                        exponent_shift: int = 0) -> WindowResult:
    """Sum of 2^loops q^excess over configurations of H(n) with pairing sigma.

    ``exponent_shift`` adds a constant to every horizontal exponent; the
    result must not depend on it.
    """
    g = window(a, b, c, n)
    spec = hx.place_nodes(g, a, b, c)
    frozen = frozen_config(g, spec)
    base = frozen.exponent
    stats = SearchStats()
    while True:
        configs = list(enumerate_ddc(g, spec, trunc_order, base, stats))
        if not configs:
            raise NodeConventionError(f"node convention invalid for (n,a,b,c) = "
                                      f"({n},{a},{b},{c})")
        low = min(cfg.exponent for cfg in configs)
        if low >= base:
            break
        log.warning("configuration below the frozen one at n=%d; rebasing", n)
        base = low
    hcount = frozen.horizontal_count()
    coeffs = [0] * (trunc_order + 1)
    for cfg in configs:
        shifted = (cfg.exponent + exponent_shift * cfg.horizontal_count()) \
            - (base + exponent_shift * hcount)
        coeffs[shifted] += 2 ** cfg.loops_count
    return WindowResult(QSeries(trunc_order, tuple(coeffs)), base,
                        configs if keep_configs else [], stats)


def zddc_window(a: int, b: int, c: int, n: int, trunc_order: int) -> QSeries:
    return zddc_window_details(a, b, c, n, trunc_order).series


@dataclass
class StableSeries:
    series: QSeries
    n_stable: int
    windows: dict[int, QSeries]


def zddc(a: int, b: int, c: int, trunc_order: int, n_ceiling: int = 8,
         n_start: int | None = None) -> StableSeries:
    """Window series at increasing n until two consecutive sizes agree."""
    n = max(1, a, b, c) if n_start is None else n_start
    windows: dict[int, QSeries] = {}
    windows[n] = zddc_window(a, b, c, n, trunc_order)
    while n + 1 <= n_ceiling:
        windows[n + 1] = zddc_window(a, b, c, n + 1, trunc_order)
        if windows[n] == windows[n + 1]:
            return StableSeries(windows[n], n, windows)
        n += 1
    raise StabilizationError(
        f"no two consecutive windows agree up to n={n_ceiling} "
        f"for (a,b,c)=({a},{b},{c}), trunc {trunc_order}", windows)


# -- ordered pairs of matchings (small-n oracle) -----------------------------

def ordered_pair_series(a: int, b: int, c: int, n: int, trunc_order: int) -> QSeries:
    """Sum of q^excess over ordered pairs (M1, M2) with pairing sigma.

    M1 is a perfect matching of H(n) and M2 of H(n) minus the nodes.  A
    configuration with l loops and odd paths arises from exactly 2^l pairs.
    """
    g = window(a, b, c, n)
    spec = hx.place_nodes(g, a, b, c)
    sigma = hx.tripartite_pairing(spec)
    base = frozen_config(g, spec).exponent
    m1s = list(hx.perfect_matchings(g))
    m2s = list(hx.perfect_matchings(g, spec.nodes))
    coeffs = [0] * (trunc_order + 1)
    for m1 in m1s:
        for m2 in m2s:
            mult = Counter(m1)
            mult.update(m2)
            cfg = make_config(g, mult, spec.nodes)
            if cfg.pairing != sigma:
                continue
            k = cfg.exponent - base
            if 0 <= k <= trunc_order:
                coeffs[k] += 1
            elif k < 0:
                raise AssertionError("pair below the frozen configuration")
    return QSeries(trunc_order, tuple(coeffs))


def path_parities(cfg: DoubleDimerConfig) -> list[int]:
    """Edge count of each node-to-node path, modulo 2."""
    return [(len(p) - 1) % 2 for p in cfg.paths]
