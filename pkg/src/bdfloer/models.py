"""Model complexes and closed-form predictions for the classification.

Contains the torus-knot staircases, the acyclic box summands, the two
families of glued-staircase complexes, the closed-form marking counts,
box insertion along a marked basis, and the predicted decomposition of
the knot Floer complex of any classified blow-down tangle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import BifilteredComplex, Gen
from .errors import InvalidParameter, OutOfRange, SignMismatch, Unclassified
from .tangles import Tangle


# -- elementary models -------------------------------------------------------


def staircase(n: int) -> BifilteredComplex:
    """C(n), the complex of the (2, 2n+1) torus knot, in the i = 0 gauge.

    Generators a_i (i = 1..n) at (0, -n+2i-1) and b_i (i = 1..n+1) at
    (0, -n+2i-2), with da_i = b_i + U b_{i+1} and the top b at Maslov 0.
    """
    if n < 1:
        raise InvalidParameter(f"staircase needs n >= 1, got {n}")
    gens, diff = {}, {}
    for i in range(1, n + 2):
        gens[f"b{i}"] = Gen(-2 * (n + 1 - i), 0, -n + 2 * i - 2)
    for i in range(1, n + 1):
        gens[f"a{i}"] = Gen(-2 * (n - i) - 1, 0, -n + 2 * i - 1)
        diff[f"a{i}"] = {f"b{i}": 0, f"b{i+1}": 1}
    return BifilteredComplex(gens, diff)


def c0() -> BifilteredComplex:
    """C0: one generator at the origin in Maslov grading 0."""
    return BifilteredComplex({"e": Gen(0, 0, 0)}, {})


def box_d(s: int, support=(0, 0), maslov=0) -> BifilteredComplex:
    """D(s): the acyclic staircase-with-sink; D(1) is the box.

    The sink y sits at ``support`` in Maslov grading ``maslov``; the arms
    x_0..x_{2s} sit above it, with dx_{2i} = y of drop (i, s-i) and the
    odd generators connecting the evens by (1,0) / (0,1) drops.
    """
    if s < 1:
        raise InvalidParameter(f"box_d needs s >= 1, got {s}")
    a, b = support
    gens = {"y": Gen(maslov, a, b)}
    diff = {}
    for i in range(0, s + 1):
        gens[f"x{2*i}"] = Gen(maslov + 1, a + i, b + s - i)
        diff[f"x{2*i}"] = {"y": 0}
    for i in range(0, s):
        gens[f"x{2*i+1}"] = Gen(maslov + 2, a + i + 1, b + s - i)
        diff[f"x{2*i+1}"] = {f"x{2*i}": 0, f"x{2*i+2}": 0}
    return BifilteredComplex(gens, diff)


def box(support=(0, 0), maslov=0) -> BifilteredComplex:
    return box_d(1, support, maslov)


def _support_shift(c: BifilteredComplex, support):
    min_i = min(g.i for g in c.gens.values())
    min_j = min(g.j for g in c.gens.values())
    return c.translate(di=support[0] - min_i, dj=support[1] - min_j)


def c_nk(n: int, k: int, support=(0, 0)) -> BifilteredComplex:
    """The k-1 glued staircases with k-2 sinks; agrees with C(n) at k = 2.

    Chains x^(j)_0..x^(j)_2n for j = 1..k-1 join the sinks y_1..y_{k-2},
    with dx^(j)_{2i} = y_j + y_{j-1} of drops (i+j, n-i) and
    (i, k-j+n-i).  Sinks in Maslov -1, even chain generators in 0, odd
    in +1; translated so the support corner is ``support``.
    """
    if n < 1 or k < 2:
        raise InvalidParameter(f"c_nk needs n >= 1, k >= 2, got ({n}, {k})")
    gens, diff = {}, {}
    ypos = {}
    if k >= 3:
        ypos[k - 2] = (0, 0)
        for j in range(k - 2, 1, -1):
            ypos[j - 1] = (ypos[j][0] + j, ypos[j][1] + j - k)
        for j, (a, b) in ypos.items():
            gens[f"y{j}"] = Gen(-1, a, b)

    def xpos(j, i):
        if j <= k - 2:
            a, b = ypos[j]
            return (a + i + j, b + n - i)
        a, b = ypos.get(k - 2, (0, 0))
        return (a + i, b + 1 + n - i)

    for j in range(1, k):
        for i in range(0, n + 1):
            a, b = xpos(j, i)
            gens[f"x{j}_{2*i}"] = Gen(0, a, b)
            targets = {}
            if j <= k - 2:
                targets[f"y{j}"] = 0
            if j >= 2:
                targets[f"y{j-1}"] = 0
            if targets:
                diff[f"x{j}_{2*i}"] = targets
        for i in range(0, n):
            a, b = xpos(j, i)
            gens[f"x{j}_{2*i+1}"] = Gen(1, a + 1, b)
            diff[f"x{j}_{2*i+1}"] = {f"x{j}_{2*i}": 0, f"x{j}_{2*i+2}": 0}
    return _support_shift(BifilteredComplex(gens, diff), support)


def cp_nk(n: int, k: int, support=(0, 0)) -> BifilteredComplex:
    """The variant family with k sinks y_1..y_k and chains between them.

    dx^(j)_{2i} = y_j + y_{j+1} with drops (i, n-i+j) and (i+k-j, n-i);
    sinks in Maslov 0, even chain generators in +1, odd in +2.
    """
    if n < 1 or k < 2:
        raise InvalidParameter(f"cp_nk needs n >= 1, k >= 2, got ({n}, {k})")
    gens, diff = {}, {}
    ypos = {1: (0, 0)}
    for j in range(1, k):
        ypos[j + 1] = (ypos[j][0] + j - k, ypos[j][1] + j)
    for j, (a, b) in ypos.items():
        gens[f"y{j}"] = Gen(0, a, b)
    for j in range(1, k):
        ya, yb = ypos[j]
        for i in range(0, n + 1):
            gens[f"x{j}_{2*i}"] = Gen(1, ya + i, yb + n - i + j)
            diff[f"x{j}_{2*i}"] = {f"y{j}": 0, f"y{j+1}": 0}
        for i in range(0, n):
            gens[f"x{j}_{2*i+1}"] = Gen(2, ya + i + 1, yb + n - i + j)
            diff[f"x{j}_{2*i+1}"] = {f"x{j}_{2*i}": 0, f"x{j}_{2*i+2}": 0}
    return _support_shift(BifilteredComplex(gens, diff), support)


def negative_staircase(h_lengths) -> BifilteredComplex:
    """Staircase of a negative L-space knot from its horizontal arrow
    lengths, read in order; vertical lengths are the reversed list.

    Odd-position generators are the sources.  An empty list gives the
    unknot complex.  Gradings are normalized as for any knot complex.
    """
    h = [int(x) for x in h_lengths]
    if any(x < 1 for x in h):
        raise InvalidParameter(f"arrow lengths must be positive: {h}")
    r = len(h)
    if r == 0:
        return c0()
    v = list(reversed(h))
    gens = {"g1": Gen(1, 0, 0)}
    diff = {}
    pos = (0, 0)
    for i in range(1, r + 1):
        pos2 = (pos[0], pos[1] - v[i - 1])
        gens[f"g{2*i}"] = Gen(0, *pos2)
        pos = (pos2[0] + h[i - 1], pos2[1])
        gens[f"g{2*i+1}"] = Gen(1, *pos)
        diff.setdefault(f"g{2*i-1}", {})[f"g{2*i}"] = 0
        diff.setdefault(f"g{2*i+1}", {})[f"g{2*i}"] = 0
    return BifilteredComplex(gens, diff).normalize_knot_gradings()


def positive_staircase(v_lengths) -> BifilteredComplex:
    """Staircase of a positive L-space knot from its vertical arrow
    lengths, read in order."""
    c = negative_staircase(v_lengths).mirror()
    return c.normalize_knot_gradings()


def mirror_torus_staircase(q: int) -> BifilteredComplex:
    """Complex of the mirror of the (q, q+1) torus knot: the staircase
    with horizontal lengths q-1, q-2, ..., 1.  q <= 1 gives the unknot."""
    if q < 0:
        raise InvalidParameter(f"need q >= 0, got {q}")
    return negative_staircase(range(q - 1, 0, -1))


@dataclass(frozen=True)
class ModelKind:
    kind: str  # C, C0, D, CNK, CPNK, BOX, NEG_STAIR, POS_STAIR, MIRROR_TORUS
    params: tuple = ()


def model(mk: ModelKind) -> BifilteredComplex:
    """Build a model complex from its selector."""
    k, p = mk.kind, mk.params
    if k == "C":
        return staircase(*p)
    if k == "C0":
        return c0()
    if k == "D":
        return box_d(*p)
    if k == "BOX":
        return box()
    if k == "CNK":
        return c_nk(*p)
    if k == "CPNK":
        return cp_nk(*p)
    if k == "NEG_STAIR":
        return negative_staircase(p[0])
    if k == "POS_STAIR":
        return positive_staircase(p[0])
    if k == "MIRROR_TORUS":
        return mirror_torus_staircase(*p)
    raise InvalidParameter(f"unknown model kind {mk}")


def _sink_maslov(mk: ModelKind) -> int:
    """Maslov grading of the distinguished sink in the default build."""
    if mk.kind in ("D", "BOX"):
        return 0
    if mk.kind == "C0":
        return 0
    raise InvalidParameter(f"{mk.kind} has no Maslov support convention")


# -- marking counts ----------------------------------------------------------


def marking_count(variant: str, n: int, k: int, l: int) -> int:
    """Closed-form number of markings on a staircase generator.

    variant "m": the (2l)-th generator of the (n, n+1) mirror staircase,
    k excluded from {0, n}.  variant "mp": the (2l-1)-th generator of
    the (n-1, n) mirror staircase, k excluded from {0, -n}.
    """
    if not 1 <= l <= n - 1:
        raise OutOfRange(f"l must be in [1, n-1], got l={l}, n={n}")
    if variant == "m":
        if k in (0, n):
            raise OutOfRange(f"k = {k} excluded for variant m with n = {n}")
        if k >= n + 1:
            return k - n
        if 1 <= k <= n - 1:
            return n - l + min(l - k, 0) + min(k + l - n, 0)
        return -k
    if variant == "mp":
        if k in (0, -n):
            raise OutOfRange(f"k = {k} excluded for variant mp with n = {n}")
        if k <= -n - 1:
            return -k - n
        if -n + 1 <= k <= -1:
            return n - l + max(l - n - k, 0) + max(k + l, 0)
        return k
    raise InvalidParameter(f"variant must be 'm' or 'mp', got {variant!r}")


# -- marked bases and box insertion ------------------------------------------


@dataclass
class MarkedBasis:
    plus: dict = field(default_factory=dict)   # generator name -> count
    minus: dict = field(default_factory=dict)

    def total(self, sign: str) -> int:
        return sum((self.plus if sign == "+" else self.minus).values())


def insert_boxes(c: BifilteredComplex, marks: MarkedBasis, m: int, sign: str):
    """c plus m boxes per marking, positioned by the alignment rule.

    For "+" markings the box sink y shares the marked generator's
    filtration level and Maslov grading; for "-" markings the corner x1
    does.  Returns (complex, new marked basis): the transferred markings
    sit on x1 (for "+") or y (for "-") of every inserted box.
    """
    if sign not in ("+", "-"):
        raise SignMismatch(f"sign must be '+' or '-', got {sign!r}")
    table = marks.plus if sign == "+" else marks.minus
    other = marks.minus if sign == "+" else marks.plus
    if not table and other:
        raise SignMismatch(f"no {sign} markings present, only the other kind")
    if m < 0:
        raise SignMismatch(f"twist count must be >= 0, got {m}")
    parts, prefixes = [c], ["base."]
    new_marks = MarkedBasis()
    idx = 0
    for name in sorted(table, key=str):
        g = c.gens[name]
        for _ in range(m * table[name]):
            if sign == "+":
                parts.append(box(support=(g.i, g.j), maslov=g.maslov))
                transferred = new_marks.plus
                marked = "x1"
            else:
                parts.append(box(support=(g.i - 1, g.j - 1), maslov=g.maslov - 2))
                transferred = new_marks.minus
                marked = "y"
            prefixes.append(f"bx{idx}.")
            transferred[f"bx{idx}.{marked}"] = 1
            idx += 1
    out = BifilteredComplex.direct_sum(parts, prefixes)
    return out.rename(lambda s: s[5:] if s.startswith("base.") else s), new_marks


# -- predicted decompositions -------------------------------------------------


@dataclass
class Summand:
    kind: ModelKind
    support: tuple | None = None   # (i, j) support corner, None = as built
    maslov: int | None = None      # Maslov support of the sink, if stated
    count: int = 1


@dataclass
class DecompositionClaim:
    """The predicted summand multiset for a classified tangle.

    ``mirror`` records that the assembled complex must be dualized at the
    end (the tangle was reduced through the mirror relation).  For the
    L-space branches ``arrow_lengths`` carries the staircase data and
    ``marking_rule`` the recorded, deliberately unverified, marked-basis
    statement.
    """

    case: str
    summands: list
    mirror: bool = False
    arrow_lengths: tuple | None = None
    marking_rule: str | None = None

    def build_raw(self) -> BifilteredComplex:
        """Assemble the summands at their claimed positions."""
        parts, prefixes = [], []
        for idx, s in enumerate(self.summands):
            base = model(s.kind)
            if s.support is not None:
                base = _support_shift(base, s.support)
            if s.maslov is not None:
                base = base.translate(dmaslov=s.maslov - _sink_maslov(s.kind))
            for copy in range(s.count):
                parts.append(base)
                prefixes.append(f"p{idx}c{copy}.")
        return BifilteredComplex.direct_sum(parts, prefixes)

    def build(self) -> BifilteredComplex:
        total = self.build_raw()
        if self.mirror:
            total = total.mirror()
        return total.normalize_knot_gradings()


def _f_support(n, s):
    return -((n - s) * (n - s - 1)) // 2


def _class1_summands(n: int, k: int):
    """Prop class1 data for K+([2n, 1, 2(n+k)]), n > 0, k >= 0."""
    summands = []
    if k <= 1:
        summands.append(Summand(ModelKind("C", (n,))))
    else:
        summands.append(Summand(ModelKind("CNK", (n, k)), support=(0, 0)))
    if k == 0:
        for s in range(1, n):
            f = _f_support(n, s)
            summands.append(Summand(ModelKind("D", (s,)), (f, f), -1, count=2))
    else:
        top = (k - 1) * (k - 2) // 2
        for s in range(1, n + 1):
            f = _f_support(n, s)
            off = -(n - s + 1) * k + 1
            p1, p2 = (f + top, f + off), (f + off, f + top)
            if k == 1 and s == n:
                assert p1 == p2 == (0, 0)
                summands.append(Summand(ModelKind("D", (s,)), p1, -1))
            else:
                summands.append(Summand(ModelKind("D", (s,)), p1, -1))
                summands.append(Summand(ModelKind("D", (s,)), p2, -1))
    return summands


def _class2_summands(n: int, k: int):
    """Prop class2 data for K-([2n, 1, 2(n+k)]), n > 0, k >= 0."""
    summands = []
    if k <= 1:
        summands.append(Summand(ModelKind("C0"), (0, 0), 0))
    else:
        summands.append(Summand(ModelKind("CPNK", (n, k)), support=(0, 0)))
    for s in range(1, n + 1):
        t = (n - s) * (n - s + 1) // 2
        wide = k * (k + 1) // 2 + (n - s) * k
        p1, p2 = (wide + t, t), (t, t + wide)
        if k == 0 and s == n:
            assert p1 == p2 == (0, 0)
            summands.append(Summand(ModelKind("D", (s,)), p1, 0))
        else:
            summands.append(Summand(ModelKind("D", (s,)), p1, 0))
            summands.append(Summand(ModelKind("D", (s,)), p2, 0))
    return summands


def _class3_sequence(n1: int, n2: int):
    seq = []
    if n2 >= n1:
        for s in range(1, n1):
            seq += [1] * (s - 1) + [n1 + n2 - 2 * s]
        for s in range(n1, n2):
            seq += [1] * (n1 - 1) + [n2 - s, 1]
        seq += [1] * ((n1 + 2) * (n1 - 1) // 2)
    else:
        for s in range(1, n2):
            seq += [1] * (s - 1) + [n1 + n2 - 2 * s]
        for s in range(n2, n1):
            seq += [1] * (n2 - 1) + [n1 - s]
        seq += [1] * ((n2 + 2) * (n2 - 1) // 2)
    return [x for x in seq if x > 0]


def _class4_sequence(n1: int, n2: int):
    # a zero overline entry (only at n2 = n1 + 1) denotes a degenerate
    # arrow and is dropped
    seq = []
    if n2 >= n1 + 2:
        for s in range(1, n1 + 1):
            seq += [1] * (s - 1) + [n1 + n2 - 2 * s]
        for s in range(n1 + 1, n2 - 1):
            seq += [1] * n1 + [n2 - s - 1]
        seq += [1] * (n1 * (n1 + 3) // 2)
    else:
        for s in range(1, n2 - 1):
            seq += [1] * (s - 1) + [n1 + n2 - 2 * s]
        seq += [1] * (n2 - 2) + [n1 - n2 + 1]
        for s in range(n2, n1 + 1):
            seq += [1] * (n2 - 1) + [n1 - s + 1]
        seq += [1] * (n2 * (n2 - 1) // 2)
    return [x for x in seq if x > 0]


def staircase_order(c: BifilteredComplex):
    """Generators of a staircase complex in path order."""
    if len(c.gens) == 1:
        return list(c.gens)
    und = {n: set() for n in c.gens}
    for x, y, *_ in c.terms():
        und[x].add(y)
        und[y].add(x)
    ends = [n for n in c.gens if len(und[n]) == 1]
    assert len(ends) == 2, "not a path-shaped staircase"
    start = max(ends, key=lambda n: (c.gens[n].alexander, str(n)))
    order, prev = [start], None
    while len(order) < len(c.gens):
        nxt = [x for x in und[order[-1]] if x != prev]
        assert len(nxt) == 1
        prev = order[-1]
        order.append(nxt[0])
    return order


def staircase_marks(base: BifilteredComplex, k: int, variant: str) -> MarkedBasis:
    """Closed-form plus-marked basis on a mirror torus staircase.

    variant "m": marks sit on the even path positions of the (n, n+1)
    mirror staircase (2n-1 generators); variant "mp": on the odd path
    positions of the (n-1, n) mirror staircase (2n-3 generators).
    """
    names = staircase_order(base)
    marks = MarkedBasis()
    if variant == "m":
        n = (len(names) + 1) // 2
        for l in range(1, n):
            cnt = marking_count("m", n, k, l)
            if cnt:
                marks.plus[names[2 * l - 1]] = cnt
    elif variant == "mp":
        n = (len(names) + 3) // 2
        for l in range(1, n):
            cnt = marking_count("mp", n, k, l)
            if cnt:
                marks.plus[names[2 * l - 2]] = cnt
    else:
        raise InvalidParameter(f"unknown variant {variant!r}")
    return marks


def _even_middle_summands(n1: int, n2: int, b: int):
    """Cor 2nsum: K+([2n1, 2b, 2n2]) with b > 0 and n1, n2 != 0."""
    n = n1 + n2
    k = -n2
    if n == 0:
        base_kind = ModelKind("C0")
        base = c0()
        marks = MarkedBasis(plus={"e": abs(k)})
    elif n > 0:
        base_kind = ModelKind("MIRROR_TORUS", (n - 1,))
        base = model(base_kind)
        marks = staircase_marks(base, k, "mp")
    else:
        base_kind = ModelKind("MIRROR_TORUS", (-n,))
        base = model(base_kind)
        marks = staircase_marks(base, k, "m")
    summands = [Summand(base_kind)]
    for name in sorted(marks.plus, key=str):
        g = base.gens[name]
        summands.append(
            Summand(ModelKind("BOX"), (g.i, g.j), g.maslov, count=b * marks.plus[name])
        )
    return summands


def _odd_b_extension(case: str, summands, extra: int, sign: str):
    """Add `extra` boxes per marking of the stated class1/class2 rule."""
    raw = DecompositionClaim(case, summands).build_raw()
    if case == "class1":
        grade = 1 if sign == "+" else 0
    else:
        grade = 2 if sign == "+" else 1
    out = list(summands)
    for name in sorted(raw.gens, key=str):
        g = raw.gens[name]
        if g.maslov != grade:
            continue
        if sign == "+":
            out.append(Summand(ModelKind("BOX"), (g.i, g.j), g.maslov, count=extra))
        else:
            out.append(
                Summand(ModelKind("BOX"), (g.i - 1, g.j - 1), g.maslov - 2,
                        count=extra)
            )
    return out


def predicted_decomposition(t: Tangle) -> DecompositionClaim:
    """Closed-form prediction for the reduced knot Floer complex of t.

    Reduces the word through the reversal, middle-shift, collapse and
    mirror relations to one of the five classified shapes and emits the
    corresponding summand data.  Raises Unclassified outside that range.
    """
    return _predict(tuple(t.terms), t.sign, False)


def _length_one(a: int, sign: int, mirrored: bool) -> DecompositionClaim:
    if sign == -1:
        return _predict((-a,), 1, not mirrored)
    n = a // 2
    if n == 0:
        return DecompositionClaim("unknot", [Summand(ModelKind("C0"))], mirrored)
    if n > 0:
        kind = ModelKind("MIRROR_TORUS", (n - 1,))
    else:
        kind = ModelKind("MIRROR_TORUS", (-n,))
    return DecompositionClaim("length1", [Summand(kind)], mirrored)


def _predict(terms, sign, mirrored) -> DecompositionClaim:
    if len(terms) == 1:
        return _length_one(terms[0], sign, mirrored)
    if len(terms) != 3:
        raise Unclassified(f"length {len(terms)} not classified")
    a1, b, a3 = terms
    if b == 0:
        return _predict((a1 + a3,), sign, mirrored)
    if b % 2 == 0:
        if sign == -1:
            return _predict((-a1, -b, -a3), 1, not mirrored)
        if b < 0:
            return _predict((a1, -b, a3), sign, mirrored)
        if a1 == 0 or a3 == 0:
            raise Unclassified("even middle with a zero outer twist region")
        summands = _even_middle_summands(a1 // 2, a3 // 2, b // 2)
        return DecompositionClaim("even_middle", summands, mirrored)
    # odd middle: strip full twists, keeping the count
    eps = 1 if b > 0 else -1
    extra = (abs(b) - (1 if abs(b) % 2 else 0)) // 2
    bp = b - 2 * eps * extra
    assert bp in (1, -1)
    if bp == -1:
        return _predict_odd(a1 - 2, a3 - 2, sign, mirrored, extra, eps)
    return _predict_odd(a1, a3, sign, mirrored, extra, eps)


def _predict_odd(a1, a3, sign, mirrored, extra, eps) -> DecompositionClaim:
    """[a1, 1, a3] together with `extra` full horizontal twists of sign eps."""
    n1, n2 = a1 // 2, a3 // 2
    if n1 > n2:
        n1, n2 = n2, n1
    if extra and not (n1 > 0 and n2 > 0):
        raise Unclassified(
            "extra full twists only classified over the class1/class2 bases"
        )
    if n1 == 0:
        return _predict((2 * n2,), sign, mirrored)
    if n2 == 0:
        return _predict((2 * n1,), sign, mirrored)
    if n1 > 0 and n2 > 0:
        n, k = n1, n2 - n1
        if sign == 1:
            summands = _class1_summands(n, k)
            case = "class1"
        else:
            summands = _class2_summands(n, k)
            case = "class2"
        if extra:
            summands = _odd_b_extension(case, summands, extra,
                                        "+" if eps == 1 else "-")
            case += "+sigma"
        return DecompositionClaim(case, summands, mirrored)
    if n1 < 0 and n2 < 0:
        # mirror, then shift the resulting -1 middle back to +1
        return _predict_odd(-2 * n1 - 2, -2 * n2 - 2, -sign, not mirrored, 0, eps)
    # mixed signs: n1 < 0 < n2 after the sort; rotate to [2n2, 1, 2n1]
    m1, m2 = n2, -n1
    if m2 == 1:
        # [-2, 1, 2m1] collapses to [2m1 + 2]
        return _predict((2 * m1 + 2,), sign, mirrored)
    if sign == 1:
        seq = _class3_sequence(m1, m2)
        kind = ModelKind("NEG_STAIR", (tuple(seq),))
        rule = ("negative L-space marked basis: one - marking on odd-Maslov "
                "generators, one + marking on even-Maslov generators except "
                "those at the overlined arrows")
        return DecompositionClaim("class3", [Summand(kind)], mirrored,
                                  arrow_lengths=tuple(seq), marking_rule=rule)
    seq = _class4_sequence(m1, m2)
    kind = ModelKind("POS_STAIR", (tuple(seq),))
    rule = ("positive L-space marked basis: one - marking on even-Maslov "
            "generators, one + marking on odd-Maslov generators except "
            "those at the overlined arrows")
    return DecompositionClaim("class4", [Summand(kind)], mirrored,
                              arrow_lengths=tuple(seq), marking_rule=rule)
