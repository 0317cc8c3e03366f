import random

import pytest

from bdfloer.complexes import BifilteredComplex, Gen, from_bigons
from bdfloer.errors import NotAChainComplex
from bdfloer.models import box, box_d, c0, staircase


def test_staircase_is_valid_and_reduced():
    c = staircase(2)
    c.validate()
    assert c.is_reduced()
    assert c.reduce().isomorphic(c)
    assert len(c) == 5


def test_same_filtration_pair_cancels():
    c = BifilteredComplex(
        {"x": Gen(1, 0, 0), "y": Gen(0, 0, 0)}, {"x": {"y": 0}}
    )
    assert len(c.reduce()) == 0


def test_cancellation_lemma_zigzag():
    # a -> y, x -> y (same filtration), x -> b: cancelling (x, y) must
    # produce the zig-zag arrow a -> b
    gens = {
        "x": Gen(1, 0, 0),
        "y": Gen(0, 0, 0),
        "a": Gen(1, 1, 0),
        "b": Gen(0, 0, -1),
    }
    diff = {"x": {"y": 0, "b": 0}, "a": {"y": 0}}
    r = BifilteredComplex(gens, diff).reduce()
    assert set(r.gens) == {"a", "b"}
    assert r.diff == {"a": {"b": 0}}


def test_invalid_complexes_rejected():
    with pytest.raises(NotAChainComplex):
        BifilteredComplex({"x": Gen(0, 0, 0), "y": Gen(0, 0, 0)}, {"x": {"y": 0}})
    with pytest.raises(NotAChainComplex):
        # raises a filtration
        BifilteredComplex({"x": Gen(1, 0, 0), "y": Gen(0, 1, 0)}, {"x": {"y": 0}})
    with pytest.raises(NotAChainComplex):
        # d^2 != 0
        BifilteredComplex(
            {"x": Gen(2, 0, 2), "y": Gen(1, 0, 1), "z": Gen(0, 0, 0)},
            {"x": {"y": 0}, "y": {"z": 0}},
        )


def test_reflect_involution_and_symmetry():
    for c in (staircase(1), staircase(4), box_d(3)):
        assert c.reflect().reflect().isomorphic(c)
    for n in range(1, 6):
        assert staircase(n).reflect().isomorphic(staircase(n))
    for s in range(1, 6):
        assert box_d(s).reflect().isomorphic(box_d(s))


def test_mirror_involution():
    for c in (staircase(2), box_d(2, support=(3, -1), maslov=5)):
        assert c.mirror().mirror().isomorphic(c)


def test_homology_ranks():
    assert c0().homology_rank() == (1, True)
    assert BifilteredComplex({}, {}).homology_rank() == (0, True)
    for s in range(1, 6):
        assert box_d(s).homology_rank() == (0, True)
    for n in range(1, 6):
        assert staircase(n).homology_rank() == (1, True)


def test_alexander_polynomial():
    assert c0().alexander_polynomial() == {0: 1}
    assert staircase(1).alexander_polynomial() == {1: 1, 0: -1, -1: 1}
    # a box at the origin contributes the symmetric 2 - t - 1/t, as for
    # the figure-eight pattern C0 + box whose total is -t + 3 - 1/t
    both = BifilteredComplex.direct_sum([c0(), box()])
    assert both.alexander_polynomial() == {1: -1, 0: 3, -1: -1}


def test_iso_basic():
    assert staircase(1).isomorphic(staircase(1))
    other = BifilteredComplex.direct_sum([c0(), box()])
    assert not staircase(1).isomorphic(other)
    assert not staircase(1).isomorphic(staircase(2))


def test_iso_relabeling_invariance():
    rng = random.Random(7)
    c = BifilteredComplex.direct_sum([staircase(3), box_d(2), box()])
    names = list(c.gens)
    perm = names[:]
    rng.shuffle(perm)
    table = dict(zip(names, perm))
    assert c.isomorphic(c.rename(lambda n: table[n]))


def test_iso_gauge_invariance():
    # translating a summand diagonally (a U-power regauge) keeps the class
    c = staircase(2)
    shifted = c.translate(di=3, dj=3, dmaslov=6)
    assert c.isomorphic(shifted)
    assert not c.isomorphic(c.translate(di=1, dj=0, dmaslov=0))


def _random_filtered_changes(c, rng, steps):
    gens = dict(c.gens)
    diff = {x: dict(ts) for x, ts in c.diff.items()}
    names = sorted(gens, key=str)
    for _ in range(steps):
        x, y = rng.choice(names), rng.choice(names)
        if x == y:
            continue
        gx, gy = gens[x], gens[y]
        if (gx.maslov - gy.maslov) % 2 != 0:
            continue
        cpow = (gy.maslov - gx.maslov) // 2
        if gy.i - cpow > gx.i or gy.j - cpow > gx.j:
            continue  # not filtered
        # basis change x -> x + U^cpow y
        newrow = dict(diff.get(x, {}))
        for t, u in diff.get(y, {}).items():
            v = cpow + u
            if t in newrow:
                assert newrow[t] == v
                del newrow[t]
            else:
                newrow[t] = v
        if newrow:
            diff[x] = newrow
        else:
            diff.pop(x, None)
        for z in names:
            if x in diff.get(z, {}):
                p = diff[z][x]
                v = p + cpow
                row = diff[z]
                if y in row:
                    assert row[y] == v
                    del row[y]
                else:
                    row[y] = v
    return BifilteredComplex(gens, diff)


def test_reduce_preserves_bifiltered_homology():
    rng = random.Random(11)
    for trial in range(12):
        parts = []
        for _ in range(rng.randint(1, 3)):
            kind = rng.randint(0, 2)
            if kind == 0:
                part = staircase(rng.randint(1, 3))
            elif kind == 1:
                part = box_d(rng.randint(1, 2))
            else:
                part = c0()
            part = part.translate(
                di=rng.randint(-2, 2), dj=rng.randint(-2, 2),
                dmaslov=2 * rng.randint(-1, 1),
            )
            parts.append(part)
        c = BifilteredComplex.direct_sum(parts)
        scrambled = _random_filtered_changes(c, rng, steps=20)
        scrambled.validate()
        red = scrambled.reduce()
        assert red.subquotient_ranks() == c.subquotient_ranks()
        assert red.equivalent(c.reduce())


def test_from_bigons_trefoil_mirror():
    # the n = 2 length-one family: x1 -> x2 with one z, x3 -> x2 with one w
    c = from_bigons(["x1", "x2", "x3"], [("x1", "x2", 1, 0), ("x3", "x2", 0, 1)])
    assert len(c) == 3
    assert c.isomorphic(staircase(1).mirror())
    ms = sorted(g.maslov for g in c.gens.values())
    assert ms == [0, 1, 2]
    assert [g.i for g in c.gens.values()] == [0, 0, 0]


def test_from_bigons_unknot():
    c = from_bigons(["p"], [])
    assert len(c) == 1
    g = next(iter(c.gens.values()))
    assert (g.maslov, g.i, g.j) == (0, 0, 0)


def test_json_round_trip():
    c = BifilteredComplex.direct_sum([staircase(2), box_d(2)])
    text = c.to_json()
    back = BifilteredComplex.from_json(text)
    assert back.to_json() == text
    assert back.isomorphic(c)
