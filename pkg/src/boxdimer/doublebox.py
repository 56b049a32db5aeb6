"""Double-box configurations and their generating function.

Three plane partitions are based at ``(0,b,c)``, ``(a,0,c)`` and ``(a,b,0)``.
A box is in the intersection space when ``i >= a, j >= b, k >= c``.  Every
box of a triple is typed by how many of the three partitions contain it
(type I, II or III).  A class of triples is identified by its typing: the
three type-I sets, the type-II set and the type-III set.  The representatives
of a class differ only in which partition omits each type-II box.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .planepart import Box, PlanePartition, enumerate_by_volume, is_order_ideal
from .qseries import QSeries

Params = tuple[int, int, int]
Assignment = tuple[tuple[Box, int], ...]  # (type-II box, index NOT containing it)


def basepoints(a: int, b: int, c: int) -> tuple[Box, Box, Box]:
    return (0, b, c), (a, 0, c), (a, b, 0)


def in_intersection(box: Box, params: Params) -> bool:
    return box[0] >= params[0] and box[1] >= params[1] and box[2] >= params[2]


@dataclass(frozen=True)
class BoxTriple:
    eta1: PlanePartition
    eta2: PlanePartition
    eta3: PlanePartition
    params: Params

    def __post_init__(self) -> None:
        for eta, bp in zip(self.etas, basepoints(*self.params)):
            if eta.basepoint != bp:
                raise ValueError(f"partition based at {eta.basepoint}, expected {bp}")

    @property
    def etas(self) -> tuple[PlanePartition, PlanePartition, PlanePartition]:
        return (self.eta1, self.eta2, self.eta3)

    @classmethod
    def from_boxes(cls, params: Params, *box_sets: Iterable[Box]) -> "BoxTriple":
        etas = [PlanePartition(frozenset(map(tuple, bs)), bp)
                for bs, bp in zip(box_sets, basepoints(*params))]
        return cls(*etas, params=tuple(params))


@dataclass(frozen=True)
class BoxTyping:
    params: Params
    type1: tuple[frozenset, frozenset, frozenset]
    type2: frozenset
    type3: frozenset

    @property
    def intersection(self) -> frozenset:
        """eta_in | eta_out, a plane partition based at (a, b, c)."""
        return self.type2 | self.type3

    def sort_key(self) -> tuple:
        return (weight(self), sorted(self.type3), sorted(self.type2),
                [sorted(t) for t in self.type1])

    def to_json(self) -> dict:
        return {"params": list(self.params),
                "type1": [[list(b) for b in sorted(t)] for t in self.type1],
                "type2": [list(b) for b in sorted(self.type2)],
                "type3": [list(b) for b in sorted(self.type3)]}

    @classmethod
    def from_json(cls, data: dict) -> "BoxTyping":
        def s(xs):
            return frozenset(tuple(b) for b in xs)
        return cls(tuple(data["params"]), tuple(s(t) for t in data["type1"]),
                   s(data["type2"]), s(data["type3"]))


def classify_boxes(eta1: Iterable[Box], eta2: Iterable[Box], eta3: Iterable[Box],
                   params: Params) -> BoxTyping:
    """Type every box of a triple of box sets (no plane-partition check)."""
    sets = [frozenset(map(tuple, e)) for e in (eta1, eta2, eta3)]
    everything = sets[0] | sets[1] | sets[2]
    type1 = [set(), set(), set()]
    type2, type3 = set(), set()
    for box in everything:
        members = [m for m in range(3) if box in sets[m]]
        if len(members) == 3:
            type3.add(box)
        elif len(members) == 2:
            type2.add(box)
        else:
            type1[members[0]].add(box)
    return BoxTyping(tuple(params), tuple(frozenset(t) for t in type1),
                     frozenset(type2), frozenset(type3))


def classify(t: BoxTriple) -> BoxTyping:
    for m, eta in enumerate(t.etas):
        for box in eta.boxes:
            if not in_intersection(box, t.params):
                others = [t.etas[k] for k in range(3) if k != m]
                assert all(box not in o.boxes for o in others), \
                    f"box {box} outside the intersection space is shared"
    return classify_boxes(*(e.boxes for e in t.etas), t.params)


def criterion1_boxes(eta1: Iterable[Box], eta2: Iterable[Box], eta3: Iterable[Box],
                     params: Params) -> bool:
    """Every intersection-space box lies in at least two of the partitions."""
    sets = [frozenset(map(tuple, e)) for e in (eta1, eta2, eta3)]
    for box in sets[0] | sets[1] | sets[2]:
        if in_intersection(box, params) and sum(box in s for s in sets) < 2:
            return False
    return True


def criterion1(t: BoxTriple) -> bool:
    return criterion1_boxes(*(e.boxes for e in t.etas), t.params)


def weight(typing: BoxTyping) -> int:
    """#type I + #type II + 2 * #type III."""
    return (sum(len(t) for t in typing.type1) + len(typing.type2)
            + 2 * len(typing.type3))


def triple_weight(eta1: Iterable[Box], eta2: Iterable[Box], eta3: Iterable[Box],
                  params: Params) -> int:
    """|eta1| + |eta2| + |eta3| - |eta_int| computed from the raw sets."""
    sets = [frozenset(map(tuple, e)) for e in (eta1, eta2, eta3)]
    union = sets[0] | sets[1] | sets[2]
    n_int = sum(1 for b in union if in_intersection(b, params))
    return sum(len(s) for s in sets) - n_int


# -- representatives ----------------------------------------------------------

def reconstruct(typing: BoxTyping, assignment: Assignment) -> tuple[frozenset, ...]:
    etas = [set(typing.type1[m]) | set(typing.type3) for m in range(3)]
    for box, missing in assignment:
        for m in range(3):
            if m != missing - 1:
                etas[m].add(box)
    return tuple(frozenset(e) for e in etas)


def valid_assignments(typing: BoxTyping) -> list[Assignment]:
    """Every way to choose the omitting partition of each type-II box.

    Boxes are assigned in lexicographic order, so the predecessors of a box
    are settled before it; a choice that leaves a receiving partition without
    a predecessor is cut immediately.
    """
    bps = basepoints(*typing.params)
    order = sorted(typing.type2)
    base = [typing.type1[m] | typing.type3 for m in range(3)]
    holds: list[set] = [set(), set(), set()]
    out: list[Assignment] = []
    chosen: list[tuple[Box, int]] = []

    def supported(box: Box, m: int) -> bool:
        bp = bps[m]
        for axis in range(3):
            if box[axis] > bp[axis]:
                pred = list(box)
                pred[axis] -= 1
                pred = tuple(pred)
                if pred not in base[m] and pred not in holds[m]:
                    return False
        return True

    def rec(i: int) -> None:
        if i == len(order):
            etas = reconstruct(typing, tuple(chosen))
            if all(is_order_ideal(e, bp) for e, bp in zip(etas, bps)):
                out.append(tuple(chosen))
            return
        box = order[i]
        for missing in (1, 2, 3):
            receivers = [m for m in range(3) if m != missing - 1]
            if all(supported(box, m) for m in receivers):
                for m in receivers:
                    holds[m].add(box)
                chosen.append((box, missing))
                rec(i + 1)
                chosen.pop()
                for m in receivers:
                    holds[m].discard(box)

    rec(0)
    return out


def moveable_boxes(typing: BoxTyping,
                   assignments: Sequence[Assignment] | None = None) -> frozenset:
    """Type-II boxes whose omitting partition varies across representatives."""
    if assignments is None:
        assignments = valid_assignments(typing)
    if not assignments:
        raise ValueError("typing has no valid representative")
    seen: dict[Box, set[int]] = {}
    for asg in assignments:
        for box, missing in asg:
            seen.setdefault(box, set()).add(missing)
    return frozenset(b for b, ms in seen.items() if len(ms) > 1)


def face_components(boxes: Iterable[Box]) -> int:
    """Number of connected components under face adjacency."""
    rest = set(boxes)
    count = 0
    while rest:
        count += 1
        stack = [rest.pop()]
        while stack:
            i, j, k = stack.pop()
            for nb in ((i + 1, j, k), (i - 1, j, k), (i, j + 1, k),
                       (i, j - 1, k), (i, j, k + 1), (i, j, k - 1)):
                if nb in rest:
                    rest.discard(nb)
                    stack.append(nb)
    return count


def contribution(typing: BoxTyping,
                 assignments: Sequence[Assignment] | None = None) -> int:
    return 2 ** face_components(moveable_boxes(typing, assignments))


@dataclass(frozen=True)
class DoubleBoxClass:
    typing: BoxTyping
    weight: int
    moveable: frozenset
    components: int
    chi: int
    representatives: tuple[Assignment, ...]

    @classmethod
    def from_typing(cls, typing: BoxTyping) -> "DoubleBoxClass":
        reps = tuple(valid_assignments(typing))
        mov = moveable_boxes(typing, reps)
        comps = face_components(mov)
        return cls(typing, weight(typing), mov, comps, 2 ** comps, reps)

    def triples(self) -> list[tuple[frozenset, ...]]:
        return [reconstruct(self.typing, asg) for asg in self.representatives]

    def to_json(self) -> dict:
        d = self.typing.to_json()
        d.update({"weight": self.weight,
                  "moveable": [list(b) for b in sorted(self.moveable)],
                  "components": self.components, "chi": self.chi,
                  "representatives": len(self.representatives)})
        return d


# -- enumeration ----------------------------------------------------------------

def _shifted(pps: Sequence[frozenset], bp: Box, params: Params):
    out = []
    for rel in pps:
        boxes = frozenset((i + bp[0], j + bp[1], k + bp[2]) for i, j, k in rel)
        inter = frozenset(b for b in boxes if in_intersection(b, params))
        out.append((boxes, inter))
    return out


def _class_keys(params: Params, max_weight: int, eta1_slice: Sequence[int]) -> set:
    """Typings of all Criterion-1 triples of weight <= max_weight.

    Bounds: |eta_m| <= |eta| and |eta1|+|eta2|+|eta3| = |eta| + |eta_int|
    <= 2|eta|, so partitions of volume <= max_weight suffice.
    """
    rel = [pp.boxes for pp in enumerate_by_volume(max_weight)]
    bps = basepoints(*params)
    e1s, e2s, e3s = (_shifted(rel, bp, params) for bp in bps)
    keys = set()
    for i1 in eta1_slice:
        b1, i1set = e1s[i1]
        for b2, i2set in e2s:
            n12 = len(b1) + len(b2)
            if n12 - len(i1set | i2set) > max_weight:
                continue
            for b3, i3set in e3s:
                inter = i1set | i2set | i3set
                if n12 + len(b3) - len(inter) > max_weight:
                    continue
                # Criterion 1: each intersection box in at least two partitions
                if (i1set & i2set) | (i1set & i3set) | (i2set & i3set) != inter:
                    continue
                keys.add(classify_boxes(b1, b2, b3, params))
    return keys


def enumerate_classes(a: int, b: int, c: int, max_weight: int,
                      jobs: int = 1) -> Iterator[DoubleBoxClass]:
    """All double-box classes of weight <= max_weight, ordered by weight."""
    if min(a, b, c) < 0 or max_weight < 0:
        raise ValueError("parameters must be nonnegative")
    params = (a, b, c)
    n1 = sum(1 for _ in enumerate_by_volume(max_weight))
    if jobs <= 1:
        keys = _class_keys(params, max_weight, range(n1))
    else:
        slices = [list(range(k, n1, jobs)) for k in range(jobs)]
        keys = set()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_class_keys, itertools.repeat(params),
                                 itertools.repeat(max_weight), slices):
                keys |= part
    for typing in sorted(keys, key=BoxTyping.sort_key):
        yield DoubleBoxClass.from_typing(typing)


def zdbc(a: int, b: int, c: int, trunc_order: int, jobs: int = 1) -> QSeries:
    """Sum of chi * q^weight over double-box classes."""
    coeffs = [0] * (trunc_order + 1)
    for cls in enumerate_classes(a, b, c, trunc_order, jobs=jobs):
        coeffs[cls.weight] += cls.chi
    return QSeries(trunc_order, tuple(coeffs))
