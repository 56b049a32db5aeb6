from collections import defaultdict

import pytest

from boxdimer.doublebox import (BoxTriple, BoxTyping, DoubleBoxClass, basepoints,
                                classify, classify_boxes, contribution, criterion1,
                                criterion1_boxes, enumerate_classes, face_components,
                                moveable_boxes, reconstruct, triple_weight,
                                valid_assignments, weight, zdbc)
from boxdimer.planepart import enumerate_by_volume

PINNED = ({(1, 1, 1), (2, 1, 1)},
          {(1, 1, 1), (2, 1, 1), (1, 1, 2)},
          {(1, 1, 1), (1, 1, 2)})


def _fibers(params, N):
    """Brute force: every Criterion-1 triple of weight <= N, grouped by typing."""
    rel = [pp.boxes for pp in enumerate_by_volume(N)]
    shifted = [[frozenset((i + bp[0], j + bp[1], k + bp[2]) for i, j, k in r)
                for r in rel] for bp in basepoints(*params)]
    fibers = defaultdict(list)
    for e1 in shifted[0]:
        for e2 in shifted[1]:
            for e3 in shifted[2]:
                if triple_weight(e1, e2, e3, params) > N:
                    continue
                if criterion1_boxes(e1, e2, e3, params):
                    fibers[classify_boxes(e1, e2, e3, params)].append((e1, e2, e3))
    return fibers


def _fiber_moveable(typing, triples):
    moveable = set()
    for box in typing.type2:
        missing = {next(m for m in range(3) if box not in t[m]) for t in triples}
        if len(missing) > 1:
            moveable.add(box)
    return frozenset(moveable)


@pytest.mark.parametrize("params,N", [((1, 1, 1), 3), ((0, 0, 0), 3),
                                      ((2, 1, 1), 2), ((1, 0, 1), 3)])
def test_classes_match_brute_force(params, N):
    fibers = _fibers(params, N)
    classes = {cls.typing: cls for cls in enumerate_classes(*params, N)}
    assert set(classes) == set(fibers)
    for typing, triples in fibers.items():
        cls = classes[typing]
        assert set(cls.triples()) == set(triples)
        assert cls.moveable == _fiber_moveable(typing, triples)
        assert cls.weight == triple_weight(*triples[0], params)


def test_classes_sorted_by_weight():
    ws = [cls.weight for cls in enumerate_classes(1, 1, 1, 3)]
    assert ws == sorted(ws)


def test_representatives_share_typing():
    for cls in enumerate_classes(1, 1, 1, 4):
        for t in cls.triples():
            triple = BoxTriple.from_boxes((1, 1, 1), *t)
            assert criterion1(triple)
            assert classify(triple) == cls.typing


def test_empty_class():
    (cls,) = [c for c in enumerate_classes(2, 1, 3, 0)]
    assert cls.weight == 0 and cls.chi == 1 and len(cls.representatives) == 1


def test_shared_box_outside_intersection_rejected():
    t = BoxTriple.from_boxes((1, 1, 1), {(0, 1, 1)}, set(), set())
    assert classify(t).type1[0] == frozenset({(0, 1, 1)})
    # a box outside the intersection can only ever lie in one room
    with pytest.raises(ValueError):
        BoxTriple.from_boxes((1, 1, 1), {(0, 1, 1)}, {(0, 1, 1)}, set())


def test_criterion1_detects_lonely_intersection_box():
    eta1 = {(0, 1, 1), (1, 1, 1)}
    assert not criterion1_boxes(eta1, set(), set(), (1, 1, 1))


def test_face_components():
    assert face_components([]) == 0
    assert face_components([(0, 0, 0), (1, 0, 0), (3, 0, 0)]) == 2
    assert face_components([(0, 0, 0), (1, 1, 0)]) == 2


SWING_TYPE1 = (frozenset({(0, 1, 1)}), frozenset({(1, 0, 1)}), frozenset({(1, 1, 0)}))


def test_one_moveable_box_class():
    # one type-II box at (1,1,1), held by eta1,eta3 in one triple, eta2,eta3 in another
    hits = [cls for cls in enumerate_classes(1, 1, 1, 4)
            if cls.typing.type2 == {(1, 1, 1)} and not cls.typing.type3
            and cls.typing.type1 == SWING_TYPE1]
    assert len(hits) == 1
    (cls,) = hits
    missing = {m for asg in cls.representatives for _, m in asg}
    assert {1, 2} <= missing
    assert cls.moveable == {(1, 1, 1)}
    assert cls.chi == 2 and cls.weight == 4


def test_lone_type2_box_not_always_moveable():
    pinned = [cls for cls in enumerate_classes(1, 1, 1, 4)
              if cls.typing.type2 == {(1, 1, 1)} and not cls.moveable]
    assert pinned
    assert all(len(cls.representatives) == 1 for cls in pinned)


def test_pinned_lists_typing():
    t = classify_boxes(*PINNED, (1, 1, 1))
    assert t.type3 == {(1, 1, 1)}
    assert t.type2 == {(2, 1, 1), (1, 1, 2)}
    assert t.type1 == (frozenset(),) * 3
    assert criterion1_boxes(*PINNED, (1, 1, 1))
    assert weight(t) == 4 == triple_weight(*PINNED, (1, 1, 1)) + 0


def test_pinned_lists_are_not_rooms():
    # the raw lists leave out the type-I boxes their rooms force
    t = classify_boxes(*PINNED, (1, 1, 1))
    assert valid_assignments(t) == []
    with pytest.raises(ValueError):
        moveable_boxes(t)


def _closed_pinned():
    eta1 = PINNED[0] | {(0, 1, 1)}
    eta2 = PINNED[1] | {(1, 0, 1), (2, 0, 1), (1, 0, 2)}
    eta3 = PINNED[2] | {(1, 1, 0)}
    return eta1, eta2, eta3


def test_pinned_lists_closed():
    etas = _closed_pinned()
    triple = BoxTriple.from_boxes((1, 1, 1), *etas)
    cls = DoubleBoxClass.from_typing(classify(triple))
    assert cls.typing.type3 == {(1, 1, 1)}
    assert cls.typing.type2 == {(2, 1, 1), (1, 1, 2)}
    assert len(cls.representatives) == 1
    assert cls.moveable == frozenset()
    assert cls.chi == contribution(cls.typing) == 1
    assert cls.weight == 9
    ((asg),) = cls.representatives
    assert dict(asg) == {(1, 1, 2): 1, (2, 1, 1): 3}


def test_typing_json_round_trip():
    for cls in enumerate_classes(1, 1, 1, 3):
        assert BoxTyping.from_json(cls.typing.to_json()) == cls.typing
        d = cls.to_json()
        assert d["chi"] == 2 ** d["components"]


def test_reconstruct_inverts_classify():
    for cls in enumerate_classes(1, 2, 1, 3):
        for asg in cls.representatives:
            assert classify_boxes(*reconstruct(cls.typing, asg), (1, 2, 1)) == cls.typing


def test_zdbc_small():
    assert zdbc(0, 0, 0, 0).coeffs == (1,)
    assert zdbc(1, 1, 1, 2).coeffs == (1, 3, 9)


def test_parallel_matches_serial():
    a = [c.typing for c in enumerate_classes(1, 1, 1, 3)]
    b = [c.typing for c in enumerate_classes(1, 1, 1, 3, jobs=2)]
    assert a == b


def test_negative_params():
    with pytest.raises(ValueError):
        list(enumerate_classes(-1, 0, 0, 2))
