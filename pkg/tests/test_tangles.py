from fractions import Fraction
from math import gcd

import pytest

from bdfloer.errors import (
    DivisionByZero,
    InvalidParity,
    NotCoprime,
    UnsupportedLength,
)
from bdfloer.tangles import Tangle, equivalent_presentations, eval_cf, normalize_cf


def test_eval_examples():
    assert eval_cf([0]) == 0
    assert eval_cf([2, 1, 2]) == Fraction(8, 3)
    assert eval_cf([4, -1, 4]) == Fraction(8, 3)
    assert eval_cf([2, -1, -2]) == Fraction(4, 3)


def test_eval_zero_tail():
    with pytest.raises(DivisionByZero):
        eval_cf([1, 0])
    with pytest.raises(DivisionByZero):
        eval_cf([2, 1, -1])  # tail [1, -1] evaluates to 0


def test_normalize_examples():
    assert normalize_cf(0, 1) == [0]
    assert normalize_cf(4, 3) == [2, -1, -2]
    assert normalize_cf(8, 3) == [2, 1, 2]


def test_normalize_errors():
    with pytest.raises(InvalidParity):
        normalize_cf(3, 2)
    with pytest.raises(InvalidParity):
        normalize_cf(3, 4)
    with pytest.raises(NotCoprime):
        normalize_cf(4, 2)


def test_normalize_round_trip_grid():
    for p in range(-200, 201, 2):
        for q in range(-201, 202, 2):
            if q == 0 or gcd(p, q) != 1:
                continue
            terms = normalize_cf(p, q)
            assert eval_cf(terms) == Fraction(p, q)
            assert len(terms) % 2 == 1
            assert all(t % 2 == 0 for t in terms[::2])


def test_middle_shift_identity():
    for n1 in range(-10, 11):
        for n2 in range(-10, 11):
            lhs = [2 * n1, 1, 2 * n2]
            rhs = [2 * (n1 + 1), -1, 2 * (n2 + 1)]
            try:
                a = eval_cf(lhs)
            except DivisionByZero:
                continue
            try:
                b = eval_cf(rhs)
            except DivisionByZero:
                continue
            assert a == b


def test_tangle_parse_and_str():
    t = Tangle.parse("+:2,1,4")
    assert t.terms == (2, 1, 4) and t.sign == 1
    assert str(t) == "+:2,1,4"
    assert Tangle.parse("-:6").terms == (6,)


def test_tangle_validation():
    with pytest.raises(ValueError):
        Tangle((1, 1, 2), 1)  # odd first entry
    with pytest.raises(ValueError):
        Tangle((2, 2), 1)  # even length


def test_equivalent_presentations():
    pres = equivalent_presentations(Tangle((2, 1, 4), 1))
    assert (Tangle((4, 1, 2), 1), "reversal") in pres
    assert (Tangle((-2, -1, -4), -1), "mirror") in pres
    assert (Tangle((4, -1, 6), 1), "middle_shift") in pres

    pres = equivalent_presentations(Tangle((0, 1, 6), 1))
    assert (Tangle((6,), 1), "collapse") in pres

    pres = equivalent_presentations(Tangle((2, -1, 6), 1))
    assert (Tangle((4,), 1), "collapse") in pres

    with pytest.raises(UnsupportedLength):
        equivalent_presentations(Tangle((2, 1, 2, 1, 2), 1))


def test_mirror_value_negates():
    t = Tangle((2, 1, 4), 1)
    for cand, tag in equivalent_presentations(t):
        if tag == "mirror":
            assert cand.value == -t.value
        if tag == "middle_shift":
            assert cand.value == t.value
