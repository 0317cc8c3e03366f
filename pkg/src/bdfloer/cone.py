"""The filtered mapping cone for (m,1)-cables of the meridian in -1-surgery.

``build_cone`` assembles the truncated cone of v + h over columns A_s,
B_s, each a copy of the input knot complex; ``flatten`` turns it into a
single bifiltered complex carrying the cone filtrations

    A_s:  I = max(i, j - s),  J = max(i - m, j - s) - ms + m(m+1)/2
    B_s:  I = i,              J = i - m - ms + m(m+1)/2

``reduced_cone_model`` writes down the explicit reduced complex for the
(2, 4k+1) torus-knot staircases directly from the closed forms, which the
pipeline reduce(flatten(build_cone(...))) must reproduce.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import BifilteredComplex, Gen, _isomorphism
from .errors import InvalidM, InvalidParameter, NotAChainComplex, WindowViolation
from .models import staircase


def _a_shift(s: int) -> int:
    """Maslov shift of the A_s column: consistent with v and h both
    dropping the total grading by one."""
    return -s * (s + 1)


def _b_shift(s: int) -> int:
    return -s * (s + 1) - 1


@dataclass
class MappingCone:
    input: BifilteredComplex      # canonical gauge, reduced
    m: int
    g: int                        # genus = top Alexander grading
    window: int                   # the <l> truncation parameter
    reflection: dict              # generator -> generator witness of reflect

    @property
    def a_range(self):
        return range(-self.window + self.m, self.window + 1)

    @property
    def b_range(self):
        return range(-self.window + self.m - 1, self.window + 1)

    def column_filtration(self, col: str, s: int, name: str):
        g = self.input.gens[name]
        i, j, m = g.i, g.j, self.m
        if col == "A":
            return (max(i, j - s), max(i - m, j - s) - m * s + m * (m + 1) // 2)
        return (i, i - m - m * s + m * (m + 1) // 2)

    def flatten(self) -> BifilteredComplex:
        gens, diff = {}, {}
        c = self.input
        for s in self.a_range:
            for n, g in c.gens.items():
                fi, fj = self.column_filtration("A", s, n)
                gens[f"A{s}|{n}"] = Gen(g.maslov + _a_shift(s), fi, fj)
        for s in self.b_range:
            for n, g in c.gens.items():
                fi, fj = self.column_filtration("B", s, n)
                gens[f"B{s}|{n}"] = Gen(g.maslov + _b_shift(s), fi, fj)
        for s in self.a_range:
            for n in c.gens:
                row = {}
                for y, u in c.diff.get(n, {}).items():
                    row[f"A{s}|{y}"] = u
                # v_s: identity into B_s
                row[f"B{s}|{n}"] = 0
                # h_s: reflection precomposed with U^s into B_{s-1}
                row[f"B{s-1}|{self.reflection[n]}"] = s - c.gens[n].alexander
                diff[f"A{s}|{n}"] = row
        for s in self.b_range:
            for n in c.gens:
                row = {f"B{s}|{y}": u for y, u in c.diff.get(n, {}).items()}
                if row:
                    diff[f"B{s}|{n}"] = row
        return BifilteredComplex(gens, diff)


def reflection_witness(c: BifilteredComplex) -> dict:
    """A chain isomorphism from c to its reflection, as a generator map."""
    wit = _isomorphism(c.reflect().canonical(), c.canonical())
    if wit is None:
        raise NotAChainComplex("input complex is not reflection-symmetric")
    return wit


def build_cone(k_complex: BifilteredComplex, m: int) -> MappingCone:
    """The full truncated cone: A_s for s in [-g+1, g+m-1], B_s for
    s in [-g, g+m-1]."""
    if m < 1:
        raise InvalidM(f"need m >= 1, got {m}")
    c = k_complex.canonical()
    if not c.is_reduced():
        raise InvalidParameter("cone input must be reduced")
    g = c.genus()
    cone = MappingCone(c, m, g, window=g + m - 1, reflection=reflection_witness(c))
    return cone


def truncate(cone: MappingCone, l: int):
    """Truncate to the <l> window, one step at a time.

    Each step <l> -> <l-1> drops the columns A_{-l+m} -> B_{-l+m-1} and
    A_l -> B_l, which split off after the change of basis
    beta_{-l+m-1} += U^{l-m} beta_{-l+m}, beta_l += U^l beta_{l-1};
    the two J-differences l and l - m are asserted nonnegative.
    Returns (truncated cone, list of split-off complements).
    """
    if not cone.m - 1 <= l <= cone.window:
        raise WindowViolation(f"l = {l} outside [{cone.m - 1}, {cone.window}]")
    current = cone
    complements = []
    while current.window > l:
        step = current.window
        if step < cone.m:
            raise WindowViolation(f"cannot step below <m-1> at {step}")
        # J-differences of the certifying change of basis, computed from
        # f(m, s) = m(m+1)/2 - ms; both must be nonnegative for the basis
        # change to be filtered
        j_diff_low = _f(cone.m, -step + cone.m) - _f(cone.m, -step + cone.m + 1) \
            + step - cone.m
        j_diff_high = _f(cone.m, step + 1) - _f(cone.m, step) + step
        assert j_diff_low == step >= 0
        assert j_diff_high == step - cone.m >= 0
        complements.append(_complement(current, step))
        current = MappingCone(
            current.input, current.m, current.g, step - 1, current.reflection
        )
    return current, complements


def _complement(cone: MappingCone, l: int) -> BifilteredComplex:
    """The two split-off column pairs of the step <l> -> <l-1>."""
    c = cone.input
    gens, diff = {}, {}
    for s in (-l + cone.m, l):
        for n, g in c.gens.items():
            fi, fj = cone.column_filtration("A", s, n)
            gens[f"A{s}|{n}"] = Gen(g.maslov + _a_shift(s), fi, fj)
    for s in (-l + cone.m - 1, l):
        for n, g in c.gens.items():
            fi, fj = cone.column_filtration("B", s, n)
            gens[f"B{s}|{n}"] = Gen(g.maslov + _b_shift(s), fi, fj)
    for s, tgt in ((-l + cone.m, "h"), (l, "v")):
        for n in c.gens:
            row = {f"A{s}|{y}": u for y, u in c.diff.get(n, {}).items()}
            if tgt == "v":
                row[f"B{s}|{n}"] = 0
            else:
                row[f"B{s-1}|{cone.reflection[n]}"] = s - c.gens[n].alexander
            diff[f"A{s}|{n}"] = row
    for s in (-l + cone.m - 1, l):
        for n in c.gens:
            row = {f"B{s}|{y}": u for y, u in c.diff.get(n, {}).items()}
            if row:
                diff[f"B{s}|{n}"] = row
    return BifilteredComplex(gens, diff)


def _f(m: int, s: int) -> int:
    return m * (m + 1) // 2 - m * s


def i_top(k: int, m: int, s: int) -> int:
    return min(k + -((1 - s) // 2), 2 * k)


def i_bot(k: int, m: int, s: int) -> int:
    return max(k + 1 + -((m - s) // 2), 1)


def reduced_cone_model(k: int, m: int) -> BifilteredComplex:
    """The explicit reduced cone of the (2, 4k+1) staircase.

    Generators beta_s for s in [-2k, 2k+m-1] plus a^(s)_i, b^(s)_i over
    the index windows [i_bot, i_top] and [i_bot, i_top + 1], with
    d a^(s)_i = b_i + U b_{i+1} and
    d b^(s)_i = U^{2k+1-i} beta_s + U^{2k+1-i+s} beta_{s-1}.
    """
    if k < 1 or m < 2:
        raise InvalidParameter(f"need k >= 1 and m >= 2, got ({k}, {m})")
    gens, diff = {}, {}
    for s in range(-2 * k, 2 * k + m):
        gens[f"beta{s}"] = Gen(_b_shift(s), 0, _f(m, s + 1))
    for s in range(-2 * k + 1, 2 * k + m):
        top, bot = i_top(k, m, s), i_bot(k, m, s)
        for i in range(bot, top + 2):
            gens[f"b{s}_{i}"] = Gen(
                2 * i - 4 * k - 2 - s * (s + 1), 0, _f(m, s) - 2 * k - s - 2 + 2 * i
            )
            diff[f"b{s}_{i}"] = {
                f"beta{s}": 2 * k + 1 - i,
                f"beta{s-1}": 2 * k + 1 - i + s,
            }
        for i in range(bot, top + 1):
            gens[f"a{s}_{i}"] = Gen(
                2 * i - 4 * k - 1 - s * (s + 1), 0, _f(m, s) - 2 * k - s - 1 + 2 * i
            )
            diff[f"a{s}_{i}"] = {f"b{s}_{i}": 0, f"b{s}_{i+1}": 1}
    return BifilteredComplex(gens, diff)


def cone_pipeline(k: int, m: int, truncate_to=None):
    """reduce(flatten(build_cone(C(2k), m))), optionally truncated first."""
    cone = build_cone(staircase(2 * k), m)
    if truncate_to is not None:
        cone, _ = truncate(cone, truncate_to)
    return cone.flatten().reduce()
