from fractions import Fraction

import pytest

from bdfloer.complexes import BifilteredComplex
from bdfloer.errors import InvalidParameter, OutOfRange, SignMismatch, Unclassified
from bdfloer.models import (
    DecompositionClaim,
    MarkedBasis,
    ModelKind,
    box,
    box_d,
    c0,
    c_nk,
    cp_nk,
    insert_boxes,
    marking_count,
    mirror_torus_staircase,
    model,
    negative_staircase,
    positive_staircase,
    predicted_decomposition,
    staircase,
    staircase_order,
)
from bdfloer.tangles import Tangle


def torus_alexander(p, q):
    """Oracle: symmetrized Alexander polynomial of the (p, q) torus knot,
    computed by expanding (t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1))."""

    def poly_mul(a, b):
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return {e: c for e, c in out.items() if c}

    def poly_div(num, den):
        num = dict(num)
        q = {}
        dmax = max(den)
        while num:
            e = max(num)
            if e < dmax:
                raise AssertionError("non-exact division")
            sh, coef = e - dmax, num[e] // den[dmax]
            q[sh] = coef
            for de, dc in den.items():
                num[de + sh] = num.get(de + sh, 0) - dc * coef
                if num[de + sh] == 0:
                    del num[de + sh]
        return q

    num = poly_mul({p * q: 1, 0: -1}, {1: 1, 0: -1})
    den = poly_mul({p: 1, 0: -1}, {q: 1, 0: -1})
    raw = poly_div(num, den)
    shift = (p - 1) * (q - 1) // 2
    return {e - shift: c for e, c in raw.items()}


def test_staircase_shape():
    c = staircase(1)
    assert c.gens["a1"].i == 0 and c.gens["a1"].j == 0
    assert c.diff["a1"] == {"b1": 0, "b2": 1}
    assert c.gens["b2"].maslov == 0


def test_cnk_equals_staircase_at_k2():
    for n in range(1, 5):
        assert c_nk(n, 2).equivalent(staircase(n))


def test_cnk_positions_match_figure():
    # the (2, 4) complex from the worked example: y1 = y2 + (2, -2),
    # x1_0 = y1 + (1, 2), x3_0 = y2 + (0, 3)
    c = c_nk(2, 4)
    y1, y2 = c.gens["y1"], c.gens["y2"]
    assert (y1.i - y2.i, y1.j - y2.j) == (2, -2)
    x10 = c.gens["x1_0"]
    assert (x10.i - y1.i, x10.j - y1.j) == (1, 2)
    x30 = c.gens["x3_0"]
    assert (x30.i - y2.i, x30.j - y2.j) == (0, 3)
    # support corner is the origin and x1_0 sits at ((k-1)(k-2)/2, n)
    assert min(g.i for g in c.gens.values()) == 0
    assert min(g.j for g in c.gens.values()) == 0
    assert (x10.i, x10.j) == (3, 2)


def test_cpnk_positions():
    c = cp_nk(1, 3)
    # y_1 at ((k-1)k/2, 0) when the support corner is the origin
    assert (c.gens["y1"].i, c.gens["y1"].j) == (3, 0)
    assert c.homology_rank() == (1, True)


def test_box_counts_and_acyclicity():
    for s in range(1, 6):
        d = box_d(s)
        assert len(d) == 2 * s + 2
        assert d.homology_rank() == (0, True)
        assert d.delta("x0", "y") == (0, s)
        assert d.delta(f"x{2*s}", "y") == (s, 0)


def test_staircase_homology_and_alexander():
    for n in range(1, 6):
        assert staircase(n).homology_rank() == (1, True)
    got = mirror_torus_staircase(3).alexander_polynomial()
    expect = torus_alexander(3, 4)
    assert got == expect


def test_mirror_torus_staircase_small():
    assert len(mirror_torus_staircase(0)) == 1
    assert len(mirror_torus_staircase(1)) == 1
    m2 = mirror_torus_staircase(2)
    assert m2.isomorphic(staircase(1).mirror())
    assert sorted(g.mu for g in m2.canonical().gens.values()) == [0, 1, 2]


def test_staircase_order_walks_the_path():
    c = mirror_torus_staircase(3)
    order = staircase_order(c)
    assert len(order) == 5
    alex = [c.gens[n].alexander for n in order]
    assert alex[0] == max(alex)


def test_positive_staircase_mirror_pair():
    for seq in ([1], [1, 1], [2, 1], [1, 2, 1]):
        neg = negative_staircase(seq)
        pos = positive_staircase(seq)
        assert pos.equivalent(neg.mirror().normalize_knot_gradings())
        assert pos.homology_rank() == (1, True)


def test_marking_count_examples():
    assert marking_count("m", 3, 1, 1) == 1
    assert marking_count("m", 3, 1, 2) == 1
    for l in range(1, 2):
        assert marking_count("mp", 2, 3, l) == 3
    assert marking_count("m", 2, 3, 1) == 1
    assert marking_count("mp", 2, 1, 1) == 1
    with pytest.raises(OutOfRange):
        marking_count("m", 3, 0, 1)
    with pytest.raises(OutOfRange):
        marking_count("m", 3, 3, 1)
    with pytest.raises(OutOfRange):
        marking_count("mp", 3, -3, 1)


def test_marking_count_symmetries():
    for n in range(2, 7):
        for k in range(1, n):
            for l in range(1, n):
                assert marking_count("m", n, k, l) == marking_count("m", n, k, n - l)
                assert marking_count("m", n, k, l) == marking_count("m", n, n - k, l)


def test_marking_count_nonnegative():
    for n in range(2, 7):
        for k in range(-4, n + 5):
            if k in (0, n):
                continue
            for l in range(1, n):
                assert marking_count("m", n, k, l) >= 0


def test_insert_boxes():
    base = c0()
    out, marks = insert_boxes(base, MarkedBasis(), 3, "+")
    assert len(out) == 1  # zero marks: unchanged

    out, marks = insert_boxes(base, MarkedBasis(plus={"e": 1}), 1, "+")
    assert len(out) == 5
    assert out.equivalent(BifilteredComplex.direct_sum([c0(), box()]))
    assert marks.total("+") == 1

    out2, _ = insert_boxes(base, MarkedBasis(plus={"e": 2}), 3, "+")
    assert len(out2) == 1 + 4 * 3 * 2

    with pytest.raises(SignMismatch):
        insert_boxes(base, MarkedBasis(plus={"e": 1}), 1, "-")


def test_insert_boxes_minus_alignment():
    base = c0()
    out, marks = insert_boxes(base, MarkedBasis(minus={"e": 1}), 1, "-")
    # x1 of the box shares the marked generator's level (0,0) grading 0
    names = [n for n in out.gens if n.endswith("x1")]
    assert len(names) == 1
    g = out.gens[names[0]]
    assert (g.maslov, g.i, g.j) == (0, 0, 0)
    assert marks.total("-") == 1


def test_predicted_decomposition_class1_examples():
    # K+ with (n, k) = (2, 0): C(2) plus a pair of boxes
    claim = predicted_decomposition(Tangle((4, 1, 4), 1))
    assert claim.case == "class1"
    built = claim.build()
    expect = BifilteredComplex.direct_sum(
        [staircase(2), box(maslov=-1), box(maslov=-1)]
    ).normalize_knot_gradings()
    assert built.equivalent(expect)


def test_predicted_decomposition_class2_examples():
    # K- with (n, k) = (1, 1): C0 plus two boxes
    claim = predicted_decomposition(Tangle((2, 1, 4), -1))
    assert claim.case == "class2"
    built = claim.build()
    assert len(built) == 9
    assert built.homology_rank() == (1, True)


def test_predicted_decomposition_class3_example():
    claim = predicted_decomposition(Tangle((2, 1, -4), 1))
    assert claim.case == "class3"
    assert claim.arrow_lengths == (1, 1)
    built = claim.build()
    assert built.isomorphic(negative_staircase([1, 1]))


def test_predicted_decomposition_length1():
    claim = predicted_decomposition(Tangle((-6,), 1))
    assert claim.summands[0].kind == ModelKind("MIRROR_TORUS", (3,))
    claim = predicted_decomposition(Tangle((6,), 1))
    assert claim.summands[0].kind == ModelKind("MIRROR_TORUS", (2,))
    claim = predicted_decomposition(Tangle((0,), 1))
    assert claim.case == "unknot"


def test_predicted_decomposition_unclassified():
    with pytest.raises(Unclassified):
        predicted_decomposition(Tangle((0, 2, 6), 1))


def test_model_dispatch():
    assert model(ModelKind("C", (2,))).isomorphic(staircase(2))
    assert model(ModelKind("BOX")).isomorphic(box())
    with pytest.raises(InvalidParameter):
        model(ModelKind("nope"))
