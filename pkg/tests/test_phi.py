import pytest

from bdfloer.cone import cone_pipeline
from bdfloer.errors import InvalidParameter, NotSimplifiable
from bdfloer.phi import (
    delta_km,
    independence_rank,
    phi_closed_form,
    phi_of_standard,
    to_standard,
)


def test_closed_form_examples():
    assert phi_closed_form(1, 2) == {(1, 2): 1}
    assert phi_closed_form(1, 3) == {(1, 0): -2, (1, 3): 1, (0, 3): 1}
    with pytest.raises(InvalidParameter):
        phi_closed_form(0, 2)
    with pytest.raises(InvalidParameter):
        phi_closed_form(1, 1)


def test_leading_entry_and_vanishing():
    for k in range(1, 4):
        for m in range(2, 6):
            table = phi_closed_form(k, m)
            assert delta_km(k, m, 1) == (k, m + k - 1)
            assert table[(k, m + k - 1)] == 1
            for (i, j), v in table.items():
                assert not (i > k or j > m + k - 1), "vanishing region violated"


def test_delta_monotonicity():
    # as s increases by one, exactly one entry of Delta drops by one
    for k in range(1, 6):
        for m in range(2, 9):
            prev = delta_km(k, m, 1)
            for s in range(2, m):
                cur = delta_km(k, m, s)
                drop = (prev[0] - cur[0], prev[1] - cur[1])
                assert drop in ((1, 0), (0, 1))
                prev = cur


def test_pipeline_matches_closed_form():
    for k in range(1, 4):
        for m in range(2, 6):
            c = cone_pipeline(k, m, truncate_to=m - 1)
            sc = to_standard(c)
            assert phi_of_standard(sc) == phi_closed_form(k, m)
            # local-equivalence sanity: a path with alternating edge kinds
            # has homology of rank one iff the node count is odd
            assert len(sc.nodes) % 2 == 1
            kinds = [e.kind for e in sc.edges]
            assert all(a != b for a, b in zip(kinds, kinds[1:]))


def test_already_standard_path():
    c = cone_pipeline(1, 2, truncate_to=1)
    sc = to_standard(c)
    assert len(sc.nodes) == 3
    assert [e.kind for e in sc.edges] == ["U", "V"]
    assert phi_of_standard(sc) == {(1, 2): 1}


def test_trivial_one_generator_table():
    from bdfloer.models import c0

    sc = to_standard(c0())
    assert phi_of_standard(sc) == {}


def test_independence_rank():
    grid6 = [phi_closed_form(k, m) for k in (1, 2) for m in (2, 3, 4)]
    assert independence_rank(grid6) == 6
    single = [phi_closed_form(1, 3)]
    assert independence_rank(single) == 1
    assert independence_rank([phi_closed_form(1, 3)] * 2) == 1
    grid9 = [phi_closed_form(k, m) for k in (1, 2, 3) for m in (2, 3, 4)]
    assert independence_rank(grid9) == 9
    # triangularity via the leading entries keeps the larger grid full too
    grid12 = [phi_closed_form(k, m) for k in (1, 2, 3) for m in (2, 3, 4, 5)]
    assert independence_rank(grid12) == 12
