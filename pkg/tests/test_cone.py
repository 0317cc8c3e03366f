import pytest

from bdfloer.cone import (
    build_cone,
    cone_pipeline,
    i_bot,
    i_top,
    reduced_cone_model,
    truncate,
)
from bdfloer.errors import InvalidM, InvalidParameter, WindowViolation
from bdfloer.models import staircase


def test_cone_column_ranges():
    cone = build_cone(staircase(2), 2)  # genus 2 input
    assert list(cone.a_range) == [-1, 0, 1, 2, 3]
    assert list(cone.b_range) == [-2, -1, 0, 1, 2, 3]
    with pytest.raises(InvalidM):
        build_cone(staircase(1), 0)


def test_b_column_filtration_is_i():
    cone = build_cone(staircase(2), 2)
    for s in cone.b_range:
        for n, g in cone.input.gens.items():
            fi, fj = cone.column_filtration("B", s, n)
            assert fi == g.i
            assert fj == g.i - 2 - 2 * s + 3


def test_flatten_validates():
    # d^2 = 0 and the filtration law across v, h and the internal terms
    for k, m in ((1, 2), (1, 3), (2, 2)):
        flat = build_cone(staircase(2 * k), m).flatten()
        flat.validate()
        assert flat.homology_rank()[0] == 1


def test_h0_is_plain_reflection():
    cone = build_cone(staircase(1), 2)
    # h_0 carries U^{0 - A(x)}: on a1 (A = 0) no U power at all
    flat = cone.flatten()
    assert flat.diff["A0|a1"]["B-1|a1"] == 0


def test_truncation_steps():
    for k, m in ((1, 2), (1, 3), (2, 2), (2, 3)):
        cone = build_cone(staircase(2 * k), m)
        full_rank = cone.flatten().homology_rank()
        small, complements = truncate(cone, m - 1)
        assert small.window == m - 1
        assert len(complements) == 2 * k
        for comp in complements:
            comp.validate()
            assert comp.homology_rank() == (0, True)
        assert small.flatten().homology_rank() == full_rank


def test_truncate_window_checks():
    cone = build_cone(staircase(2), 2)
    same, comps = truncate(cone, cone.window)
    assert same.window == cone.window and comps == []
    with pytest.raises(WindowViolation):
        truncate(cone, 0)
    with pytest.raises(WindowViolation):
        truncate(cone, cone.window + 1)


def test_reduced_cone_model_shorthands():
    # (k, m) = (1, 2), s = 1: no a generators, the single b is b1_2
    assert i_top(1, 2, 1) == 1
    assert i_bot(1, 2, 1) == 2
    c = reduced_cone_model(1, 2)
    assert "b1_2" in c.gens and "a1_1" not in c.gens
    with pytest.raises(InvalidParameter):
        reduced_cone_model(0, 2)
    with pytest.raises(InvalidParameter):
        reduced_cone_model(1, 1)


def test_reduced_cone_model_shifts():
    # Delta(b^(s)_i, beta_{s-1}) = (2k+1-i+s, i-1)
    for k, m in ((1, 2), (1, 3), (2, 2)):
        c = reduced_cone_model(k, m)
        for s in range(-2 * k + 1, 2 * k + m):
            for i in range(i_bot(k, m, s), i_top(k, m, s) + 2):
                assert c.delta(f"b{s}_{i}", f"beta{s-1}") == (2 * k + 1 - i + s, i - 1)
                assert c.delta(f"b{s}_{i}", f"beta{s}") == (
                    2 * k + 1 - i,
                    m - s + i - 1,
                )


def test_pipeline_reproduces_reduced_model():
    for k, m in ((1, 2), (1, 3), (2, 2)):
        got = cone_pipeline(k, m)
        expect = reduced_cone_model(k, m)
        assert len(got) == len(expect)
        assert got.equivalent(expect)


def test_out_of_window_maps_are_quasi_isomorphisms():
    # v_s for s > g+m-1 and h_s for s < -g+1 are isos on homology: the
    # two-column complexes A_s -> B_s and A_s -> B_{s-1} are acyclic.
    from bdfloer.cone import MappingCone, _complement

    cone = build_cone(staircase(2), 2)
    g, m = cone.g, cone.m
    wide = MappingCone(cone.input, m, g, cone.window + 1, cone.reflection)
    comp = _complement(wide, wide.window)
    comp.validate()
    assert comp.homology_rank() == (0, True)
