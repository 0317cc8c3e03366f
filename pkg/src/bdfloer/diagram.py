"""Lifted genus-one doubly pointed Heegaard diagrams for blow-down knots.

The diagram lives in the plane cover of the torus: alpha lifts are the
integer-height horizontal lines, the basepoint lattices are
z = (1/4, 1/2) + Z^2 and w = (3/4, 1/2) + Z^2, and the beta curve is one
period of an embedded polyline, invariant under the deck translation
(1, -1) for a +1-framed blow-down and (1, +1) for -1 framing.

The twist word [a1, a2, a3, ...] acts rightmost letter... the first
entry first: tau^{a1}, then sigma^{a2}, then tau^{a3}, and so on.

tau^{2n} is the exact piecewise-linear tent shear
(x, y) -> (x, y + n phi(x)) supported on |x - 1/4| <= 1/8 around the z
columns: each strand crossing a column gains the finger carrying n more
z points (upward for positive n, downward for negative).  The shear maps
the z lattice to itself and is a homeomorphism of the plane commuting
with the deck group, so embeddedness is automatic.

sigma^{+-1} is the exact square-polar half twist in the block
max(|x-cx|,|y-cy|) < 3/8 around each block centre (1/2, 1/2) + Z^2,
swapping the z and w inside; relabelling the basepoints afterwards
restores z on the left, so the basepoint lattices never move.  Vertices
map exactly; curved images are sampled and certified embedded, refining
until the certificate passes.

All remaining conventions (which corner of a bigon is the source, the
sign of the twists) are pinned by anchor examples: the unknot words give
one generator and no bigons, the [-2n] words reproduce the explicit
staircase family with its z and w counts, and [2, 1, 2] yields the
trefoil staircase with its top generator in Maslov grading 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonTransverse, UnsupportedMiddleTerm
from .geometry import (
    add,
    cross,
    on_segment,
    point_in_polygon,
    polygon_simple,
    seg_line_x_crossing,
    seg_line_y_crossing,
    segment_meets_open_polygon,
    segments_intersect,
)
from .models import MarkedBasis
from .tangles import Tangle

HALF = Fraction(1, 2)
Z_COLUMN = Fraction(1, 4)
W_COLUMN = Fraction(3, 4)
BASE = Fraction(1, 2)
TENT_HW = Fraction(1, 8)
SIGMA_OUTER = Fraction(3, 8)
SIGMA_INNER = Fraction(5, 16)


@dataclass
class Curve:
    """One period of the lifted beta curve; verts[-1] = verts[0] + period."""

    verts: list
    period: tuple

    def __post_init__(self):
        assert self.verts[-1] == add(self.verts[0], self.period)
        assert len(self.verts) >= 2

    def segments(self):
        cached = getattr(self, "_segs", None)
        if cached is None:
            cached = list(zip(self.verts, self.verts[1:]))
            object.__setattr__(self, "_segs", cached)
        return cached

    def seg_boxes(self):
        cached = getattr(self, "_boxes", None)
        if cached is None:
            cached = [
                (min(a[0], b[0]), min(a[1], b[1]),
                 max(a[0], b[0]), max(a[1], b[1]))
                for a, b in self.segments()
            ]
            object.__setattr__(self, "_boxes", cached)
        return cached

    def bbox(self):
        cached = getattr(self, "_bbox", None)
        if cached is None:
            xs = [p[0] for p in self.verts]
            ys = [p[1] for p in self.verts]
            cached = (min(xs), min(ys), max(xs), max(ys))
            object.__setattr__(self, "_bbox", cached)
        return cached

    def tidy(self):
        vs = [self.verts[0]]
        for p in self.verts[1:]:
            if p != vs[-1]:
                vs.append(p)
        changed = True
        while changed:
            changed = False
            k = 1
            while k < len(vs) - 1:
                o, a, b = vs[k - 1], vs[k], vs[k + 1]
                if (a[0] - o[0]) * (b[1] - o[1]) == (a[1] - o[1]) * (b[0] - o[0]):
                    del vs[k]
                    changed = True
                else:
                    k += 1
        return Curve(vs, self.period)

    def translate(self, shift):
        return Curve([add(v, shift) for v in self.verts], self.period)

    def unroll(self, copies, start=0):
        """Vertex list of ``copies`` consecutive periods, starting with
        the period translated by start * period."""
        out = []
        for k in range(start, start + copies):
            shift = (k * self.period[0], k * self.period[1])
            chunk = [add(v, shift) for v in self.verts[:-1]]
            out.extend(chunk)
        final = (
            (start + copies) * self.period[0],
            (start + copies) * self.period[1],
        )
        out.append(add(self.verts[0], final))
        return out


@dataclass
class LiftedDiagram:
    curve: Curve
    sign: int
    tangle: Tangle
    raw_curve: Curve = None  # before the final pull-tight

    @property
    def z(self):
        return (Z_COLUMN, BASE)

    @property
    def w(self):
        return (W_COLUMN, BASE)


@dataclass
class Bigon:
    source: str
    target: str
    z_count: int
    w_count: int


@dataclass
class Generator:
    name: str
    position: tuple  # representative on the x-axis, x in [0, 1)


# -- general position and embeddedness ----------------------------------------


def _is_basepoint(p) -> bool:
    if (p[1] - BASE).denominator != 1:
        return False
    return (p[0] - Z_COLUMN).denominator == 1 or (p[0] - W_COLUMN).denominator == 1


def assert_general_position(curve: Curve):
    for x, y in curve.verts[:-1]:
        if y.denominator == 1:
            raise NonTransverse(f"vertex on an alpha line: ({x}, {y})")
    for a, b in curve.segments():
        if a[1] == b[1] and a[1].denominator == 1:
            raise NonTransverse("segment along an alpha line")
        if a[0] == b[0] and ((a[0] - Z_COLUMN).denominator == 1
                             or (a[0] - W_COLUMN).denominator == 1):
            raise NonTransverse("segment along a basepoint column")
        for pt in _basepoints_in_box(
            min(a[0], b[0]), min(a[1], b[1]), max(a[0], b[0]), max(a[1], b[1])
        ):
            if on_segment(pt[0], a, b):
                raise NonTransverse(f"curve passes through basepoint {pt[0]}")


def assert_embedded(curve: Curve, active=None):
    """One period against itself and every nearby integer translate.

    With ``active`` given (a set of segment indices), only pairs touching
    an active segment are tested: used after local modifications whose
    complement was already certified.
    """
    segs = curve.segments()
    n = len(segs)
    boxes = [
        (min(a[0], b[0]), min(a[1], b[1]), max(a[0], b[0]), max(a[1], b[1]))
        for a, b in segs
    ]
    x0, y0, x1, y1 = curve.bbox()
    sx = int(x1 - x0) + 2
    sy = int(y1 - y0) + 2
    for i in range(n):
        a, b = segs[i]
        bx0, by0, bx1, by1 = boxes[i]
        for dx in range(0, sx + 1):
            for dy in range(-sy, sy + 1):
                if dx == 0 and dy < 0:
                    continue
                for j in range(n):
                    if dx == 0 and dy == 0 and j <= i:
                        continue
                    if active is not None and i not in active and j not in active:
                        continue
                    ox0, oy0, ox1, oy1 = boxes[j]
                    if (
                        ox1 + dx < bx0
                        or ox0 + dx > bx1
                        or oy1 + dy < by0
                        or oy0 + dy > by1
                    ):
                        continue
                    c = add(segs[j][0], (dx, dy))
                    d = add(segs[j][1], (dx, dy))
                    shared = {a, b} & {c, d}
                    if shared:
                        # consecutive edges of the same lift may share a
                        # vertex; anything more is a collision
                        if segments_intersect(a, b, c, d, closed=False):
                            raise NonTransverse("curve collision (shared vertex)")
                        continue
                    if segments_intersect(a, b, c, d):
                        raise NonTransverse(
                            f"curve collision at translate {(dx, dy)}"
                        )


def _basepoints_in_box(x0, y0, x1, y1):
    pts = []
    for col, kind in ((Z_COLUMN, "z"), (W_COLUMN, "w")):
        cx = x0 + ((col - x0) % 1)
        while cx <= x1:
            cy = y0 + ((BASE - y0) % 1)
            while cy <= y1:
                pts.append(((cx, cy), kind))
                cy += 1
            cx += 1
    return pts


def _segment_meets_open_triangle(a, b, tri) -> bool:
    """Exact: does [a, b] meet the open triangle?  The segment parameter
    interval is clipped by the three edge half-planes."""
    from fractions import Fraction as F

    o = cross(tri[0], tri[1], tri[2])
    if o == 0:
        return False
    if o < 0:
        tri = (tri[0], tri[2], tri[1])
    t0, t1 = F(0), F(1)
    d = (b[0] - a[0], b[1] - a[1])
    for i in range(3):
        p, q = tri[i], tri[(i + 1) % 3]
        nx, ny = q[1] - p[1], p[0] - q[0]  # inward normal
        fa = nx * (a[0] - p[0]) + ny * (a[1] - p[1])
        fd = nx * d[0] + ny * d[1]
        if fd == 0:
            if fa < 0:
                return False
            continue
        t_hit = F(-fa, fd)
        if fd > 0:
            t0 = max(t0, t_hit)
        else:
            t1 = min(t1, t_hit)
        if t0 > t1:
            return False
    if t0 >= t1:
        return False
    # the clipped piece could still lie entirely inside an edge line
    mid_t = (t0 + t1) / 2
    mid = (a[0] + mid_t * d[0], a[1] + mid_t * d[1])
    for i in range(3):
        if cross(tri[i], tri[(i + 1) % 3], mid) == 0:
            return False
    return True


def _chord_clear(curve: Curve, chord, skip_pts) -> bool:
    """Does the new chord avoid all preimage segments except those
    incident to its endpoints, and every basepoint?"""
    a, b = chord
    x0, x1 = min(a[0], b[0]) - 1, max(a[0], b[0]) + 1
    y0, y1 = min(a[1], b[1]) - 1, max(a[1], b[1]) + 1
    for pt, _ in _basepoints_in_box(x0, y0, x1, y1):
        if on_segment(pt, a, b):
            return False
    for c, d in _preimage_segments(curve, x0, y0, x1, y1):
        if c in skip_pts or d in skip_pts:
            continue
        if segments_intersect(a, b, c, d):
            return False
    return True


def simplify_polyline(curve: Curve, max_rounds=4) -> Curve:
    """Shorten the curve by certified triangle moves.

    A vertex is dropped when the swept triangle contains no basepoint,
    no basepoint sits on the new chord, and no other curve material
    (including translates) meets the open triangle.  Each move is an
    isotopy in the basepoint complement, so bigon data is unaffected.
    """
    for _ in range(max_rounds):
        curve = curve.tidy()
        verts = curve.verts
        removed = False
        k = 1
        while k < len(verts) - 1:
            o, v, w = verts[k - 1], verts[k], verts[k + 1]
            tri = (o, v, w)
            if cross(o, v, w) == 0:
                k += 1
                continue
            if not _triangle_move_ok(curve, tri):
                k += 1
                continue
            cand = Curve(verts[:k] + verts[k + 1 :], curve.period)
            try:
                assert_general_position(cand)
            except NonTransverse:
                k += 1
                continue
            # the only new material is the chord o -> w; checking it
            # against the preimage replaces the full embeddedness scan
            if not _chord_clear(cand, (o, w), {o, v, w}):
                k += 1
                continue
            curve = cand
            verts = curve.verts
            removed = True
        if not removed:
            break
    return curve


def _vertex_in_general_position(curve: Curve, k) -> bool:
    """Local general-position conditions at vertex k."""
    v = curve.verts[k]
    if v[1].denominator == 1:
        return False
    if (v[0] - Z_COLUMN).denominator == 1 or (v[0] - W_COLUMN).denominator == 1:
        return False
    n = len(curve.verts) - 1
    prev_pt = curve.verts[k - 1] if k > 0 else add(
        curve.verts[n - 1], (-curve.period[0], -curve.period[1])
    )
    next_pt = curve.verts[k + 1]
    for a, b in ((prev_pt, v), (v, next_pt)):
        if a[1] == b[1] and a[1].denominator == 1:
            return False
        for pt, _ in _basepoints_in_box(
            min(a[0], b[0]), min(a[1], b[1]), max(a[0], b[0]), max(a[1], b[1])
        ):
            if on_segment(pt, a, b):
                return False
    return True


def _try_move_vertex(curve: Curve, k, target):
    """Certified relocation of one vertex; None when not legal."""
    verts = list(curve.verts)
    n = len(verts) - 1
    old = verts[k]
    prev_pt = verts[k - 1] if k > 0 else add(
        verts[n - 1], (-curve.period[0], -curve.period[1])
    )
    next_pt = verts[k + 1]
    cand_list = list(verts)
    cand_list[k] = target
    if k == 0:
        cand_list[n] = add(target, curve.period)
    cand = Curve(cand_list, curve.period)
    if not _vertex_in_general_position(cand, k):
        return None
    skip = {old, target, prev_pt, next_pt}
    if not _chord_clear(cand, (prev_pt, target), skip):
        return None
    if not _chord_clear(cand, (target, next_pt), skip):
        return None
    if not _triangle_move_ok(curve, (prev_pt, old, target)):
        return None
    if not _triangle_move_ok(curve, (old, next_pt, target)):
        return None
    return cand


def repair_general_position(curve: Curve, max_rounds=8) -> Curve:
    """Nudge vertices off alpha lines and basepoint columns.

    Twist maps can land a vertex exactly on a line of interest; each
    offender is moved by a certified tiny perturbation.
    """
    for _ in range(max_rounds):
        bad = [
            k
            for k in range(len(curve.verts) - 1)
            if not _vertex_in_general_position(curve, k)
        ]
        if not bad:
            return curve
        k = bad[0]
        v = curve.verts[k]
        moved = None
        delta = Fraction(1, 2048)
        for _ in range(12):
            for dx, dy in ((0, delta), (0, -delta), (delta, delta),
                           (-delta, delta), (delta, -delta), (-delta, -delta)):
                moved = _try_move_vertex(curve, k, (v[0] + dx, v[1] + dy))
                if moved is not None:
                    break
            if moved is not None:
                break
            delta /= 4
        if moved is None:
            raise NonTransverse(f"cannot repair general position at {v}")
        curve = moved
    raise NonTransverse("general position repair did not stabilize")


def snap_vertices(curve: Curve, denom=64) -> Curve:
    """Round vertices onto the 1/denom lattice where the move certifies.

    Each vertex move is an isotopy of the two incident segments; it is
    kept when general position still holds and both new segments are
    clear of the remaining preimage and of basepoints.  Snapping keeps
    coordinate denominators small, which the exact arithmetic rewards.
    """
    changed = True
    guard = 0
    while changed and guard < 3:
        changed = False
        guard += 1
        for k in range(len(curve.verts) - 1):
            x, y = curve.verts[k]
            target = (Fraction(round(x * denom), denom),
                      Fraction(round(y * denom), denom))
            if target == (x, y):
                continue
            moved = _try_move_vertex(curve, k, target)
            if moved is not None:
                curve = moved
                changed = True
    return curve.tidy()


def _triangle_move_ok(curve: Curve, tri) -> bool:
    o, v, w = tri
    x0 = min(p[0] for p in tri)
    y0 = min(p[1] for p in tri)
    x1 = max(p[0] for p in tri)
    y1 = max(p[1] for p in tri)
    for pt, _ in _basepoints_in_box(x0, y0, x1, y1):
        if on_segment(pt, o, w):
            return False
        s1, s2, s3 = cross(o, v, pt), cross(v, w, pt), cross(w, o, pt)
        if (s1 > 0 and s2 > 0 and s3 > 0) or (s1 < 0 and s2 < 0 and s3 < 0):
            return False
    own = {(o, v), (v, w), (o, w), (v, o), (w, v), (w, o)}
    for a, b in _preimage_segments(curve, x0, y0, x1, y1):
        if (a, b) in own:
            continue
        if _segment_meets_open_triangle(a, b, tri):
            return False
        # an endpoint strictly inside the new chord blocks the move;
        # touching it at a corner of the triangle is fine
        for p in (a, b):
            if p not in (o, w) and on_segment(p, o, w):
                return False
    return True


# -- subdivision helpers -------------------------------------------------------


def _cut_points_on_segment(a, b, axis, offset):
    """Interior crossings of [a, b] with the family axis == offset mod 1."""
    coord = 0 if axis == "x" else 1
    lo, hi = sorted((a[coord], b[coord]))
    cuts = []
    lev = lo + ((offset - lo) % 1)
    while lev <= hi:
        pt = (
            seg_line_x_crossing(a, b, lev)
            if axis == "x"
            else seg_line_y_crossing(a, b, lev)
        )
        if pt is not None:
            cuts.append(pt)
        lev += 1
    return cuts


def _subdivide(verts, cut_fn):
    out = [verts[0]]
    for a, b in zip(verts, verts[1:]):
        cuts = cut_fn(a, b)
        cuts.sort(key=lambda p: (p[0] - a[0]) ** 2 + (p[1] - a[1]) ** 2)
        for p in cuts:
            if p != out[-1] and p != b:
                out.append(p)
        out.append(b)
    return out


# -- tau: the tent shear -------------------------------------------------------


def _tent(x):
    t = (x - Z_COLUMN) % 1
    if t > HALF:
        t -= 1
    if abs(t) >= TENT_HW:
        return Fraction(0)
    return 1 - abs(t) / TENT_HW


def tau_power(curve: Curve, full_twists: int) -> Curve:
    """tau^{2 * full_twists} as the exact tent shear."""
    if full_twists == 0:
        return curve

    def cuts(a, b):
        pts = []
        for off in (Z_COLUMN - TENT_HW, Z_COLUMN, Z_COLUMN + TENT_HW):
            pts += _cut_points_on_segment(a, b, "x", off % 1)
        return pts

    verts = _subdivide(curve.verts, cuts)
    moved = [(x, y + full_twists * _tent(x)) for x, y in verts]
    return Curve(moved, curve.period).tidy()


# -- sigma: the square half twist ----------------------------------------------


def _block_center(p):
    """Centre of the twist block whose closed square could contain p;
    points in the gaps between blocks get a centre at square distance
    >= 5/8 and are treated as fixed."""
    return (p[0] // 1 + HALF, p[1] // 1 + HALF)


def _square_radius(p, c):
    return max(abs(p[0] - c[0]), abs(p[1] - c[1]))


def _square_param(p, c, rho):
    dx, dy = p[0] - c[0], p[1] - c[1]
    if dx == rho:
        return dy + rho
    if dy == rho:
        return 2 * rho + (rho - dx)
    if dx == -rho:
        return 4 * rho + (rho - dy)
    assert dy == -rho
    return 6 * rho + (dx + rho)


def _square_point(c, rho, t):
    t %= 8 * rho
    if t < 2 * rho:
        return (c[0] + rho, c[1] - rho + t)
    if t < 4 * rho:
        return (c[0] + rho - (t - 2 * rho), c[1] + rho)
    if t < 6 * rho:
        return (c[0] - rho, c[1] + rho - (t - 4 * rho))
    return (c[0] - rho + (t - 6 * rho), c[1] - rho)


def _sigma_map(p, direction):
    c = _block_center(p)
    rho = _square_radius(p, c)
    if rho >= SIGMA_OUTER:
        return p
    if rho <= SIGMA_INNER:
        return (2 * c[0] - p[0], 2 * c[1] - p[1])
    f = (SIGMA_OUTER - rho) / (SIGMA_OUTER - SIGMA_INNER)
    t = _square_param(p, c, rho)
    return _square_point(c, rho, t - direction * f * 4 * rho)


def _near_block(p) -> bool:
    return _square_radius(p, _block_center(p)) < SIGMA_OUTER


def sigma_step(curve: Curve, direction: int) -> Curve:
    """One horizontal half twist; direction +1 twists clockwise.

    Segments are cut at a fan of concentric squares and at the block
    diagonals, so the sample density follows the twist geometry; within
    one annular sector a chord approximates the image well.  The result
    is certified embedded, refining the fan on failure.
    """

    def make_cuts(radii):
        def cuts(a, b):
            pts = []
            for r in radii:
                for off in ((HALF - r) % 1, (HALF + r) % 1):
                    pts += _cut_points_on_segment(a, b, "x", off)
                    pts += _cut_points_on_segment(a, b, "y", off)
            for sgn in (1, -1):
                fa = a[1] - sgn * a[0]
                fb = b[1] - sgn * b[0]
                if fa == fb:
                    continue
                lo, hi = sorted((fa, fb))
                lev = lo + ((-lo) % 1)
                while lev <= hi:
                    t = (lev - fa) / (fb - fa)
                    if 0 < t < 1:
                        pts.append(
                            (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
                        )
                    lev += 1
            return pts

        return cuts

    radii = [
        SIGMA_INNER + Fraction(j, 8) * (SIGMA_OUTER - SIGMA_INNER)
        for j in range(9)
    ]
    source = _subdivide(curve.verts, make_cuts(radii))
    focus = None  # indices whose pieces changed since the last scan
    for _ in range(80):
        moved = [_sigma_map(p, direction) for p in source]
        bad = _collision_segments(moved, curve.period, focus=focus)
        if not bad:
            cand = Curve(moved, curve.period).tidy()
            return repair_general_position(cand)
        # bisect the source pieces behind every colliding image chord:
        # images are exact at sample points and the true twisted strands
        # are disjoint, so refinement terminates
        refined = []
        focus = set()
        for k, p in enumerate(source[:-1]):
            refined.append(p)
            if k in bad:
                q = source[k + 1]
                focus.update((len(refined) - 1, len(refined)))
                refined.append(((p[0] + q[0]) / 2, (p[1] + q[1]) / 2))
        refined.append(source[-1])
        if len(refined) == len(source):
            break
        source = refined
    raise NonTransverse("sigma twist not embedded after refinement")


def _collision_segments(verts, period, focus=None):
    """Indices of segments of the one-period polyline that collide with
    the curve or its nearby translates.  With ``focus`` given, only pairs
    touching a focus segment are rescanned."""
    segs = list(zip(verts, verts[1:]))
    n = len(segs)
    boxes = [
        (min(a[0], b[0]), min(a[1], b[1]), max(a[0], b[0]), max(a[1], b[1]))
        for a, b in segs
    ]
    xs = [p[0] for p in verts]
    ys = [p[1] for p in verts]
    sx = int(max(xs) - min(xs)) + 2
    sy = int(max(ys) - min(ys)) + 2
    bad = set()
    for i in range(n):
        a, b = segs[i]
        if a == b:
            bad.add(i)
            continue
        bx0, by0, bx1, by1 = boxes[i]
        for dx in range(0, sx + 1):
            for dy in range(-sy, sy + 1):
                if dx == 0 and dy < 0:
                    continue
                for j in range(n):
                    if dx == 0 and dy == 0 and j <= i:
                        continue
                    if focus is not None and i not in focus and j not in focus:
                        continue
                    ox0, oy0, ox1, oy1 = boxes[j]
                    if (
                        ox1 + dx < bx0
                        or ox0 + dx > bx1
                        or oy1 + dy < by0
                        or oy0 + dy > by1
                    ):
                        continue
                    c = add(segs[j][0], (dx, dy))
                    d = add(segs[j][1], (dx, dy))
                    shared = {a, b} & {c, d}
                    if shared:
                        if segments_intersect(a, b, c, d, closed=False):
                            bad.add(i)
                            bad.add(j)
                        continue
                    if segments_intersect(a, b, c, d):
                        bad.add(i)
                        bad.add(j)
    return bad


def sigma_power(curve: Curve, k: int) -> Curve:
    direction = 1 if k > 0 else -1
    for _ in range(abs(k)):
        curve = sigma_step(curve, direction)
        curve = pull_tight(curve)
        curve = simplify_polyline(curve)
        curve = snap_vertices(curve)
        curve = simplify_polyline(curve)
    return curve


# -- pull tight -----------------------------------------------------------------


def _walk_crossings(verts, axis, offsets):
    """Crossings of the open polyline with the line families, in walk
    order: a list of (segment index, point, level)."""
    out = []
    for idx, (a, b) in enumerate(zip(verts, verts[1:])):
        found = []
        for off in offsets:
            for pt in _cut_points_on_segment(a, b, axis, off):
                lev = pt[0] if axis == "x" else pt[1]
                found.append((pt, lev))
        found.sort(key=lambda pl: (pl[0][0] - a[0]) ** 2 + (pl[0][1] - a[1]) ** 2)
        for pt, lev in found:
            out.append((idx, pt, lev))
    return out


def _preimage_segments(curve: Curve, x0, y0, x1, y1):
    """All segments of the full Z^2 preimage meeting the box."""
    bx0, by0, bx1, by1 = curve.bbox()
    base = curve.segments()
    boxes = curve.seg_boxes()
    segs = []
    dx0 = int(x0 - bx1) - 1
    dx1 = int(x1 - bx0) + 1
    dy0 = int(y0 - by1) - 1
    dy1 = int(y1 - by0) + 1
    for dx in range(dx0, dx1 + 1):
        for dy in range(dy0, dy1 + 1):
            for (a, b), (sx0, sy0, sx1, sy1) in zip(base, boxes):
                if sx1 + dx < x0 or sx0 + dx > x1:
                    continue
                if sy1 + dy < y0 or sy0 + dy > y1:
                    continue
                segs.append((add(a, (dx, dy)), add(b, (dx, dy))))
    return segs


def _disk_is_empty(curve: Curve, poly) -> bool:
    """No basepoints and no curve material strictly inside the polygon.

    The polygon boundary consists of a curve arc plus a chord on a line;
    arc segments are recognized and skipped exactly.
    """
    if not polygon_simple(poly):
        return False
    x0 = min(p[0] for p in poly)
    y0 = min(p[1] for p in poly)
    x1 = max(p[0] for p in poly)
    y1 = max(p[1] for p in poly)
    for pt, _ in _basepoints_in_box(x0, y0, x1, y1):
        try:
            if point_in_polygon(pt, poly):
                return False
        except ValueError:
            # a basepoint on the chord (possible for the column families)
            # blocks the isotopy
            return False
    boundary = set()
    for a, b in zip(poly, poly[1:] + poly[:1]):
        boundary.add((a, b))
        boundary.add((b, a))
    for a, b in _preimage_segments(curve, x0, y0, x1, y1):
        if (a, b) in boundary:
            continue
        if segment_meets_open_polygon(a, b, poly):
            return False
    return True


def _bigon_candidates(curve: Curve, axis, offsets):
    """Same-level crossing pairs whose chord is clear of the crossings
    between them along the walk, with the first corner in the middle
    period.  Yields (walk verts, i0, p0, i1, p1, level)."""
    if axis == "x":
        tcurve = Curve([(y, x) for x, y in curve.verts],
                       (curve.period[1], curve.period[0]))
        for walk, i0, p0, i1, p1, lev in _bigon_candidates(tcurve, "y", offsets):
            yield ([(y, x) for x, y in walk], i0, (p0[1], p0[0]),
                   i1, (p1[1], p1[0]), lev)
        return
    x0, y0, x1, y1 = curve.bbox()
    span = int(y1 - y0) + 3
    walk = curve.unroll(2 * span + 1, start=-span)
    crossings = _walk_crossings(walk, "y", offsets)
    nseg = len(curve.verts) - 1
    by_level = {}
    for idx, pt, lev in crossings:
        by_level.setdefault(lev, []).append((idx, pt))
    for lev, lst in by_level.items():
        for a in range(len(lst)):
            i0, p0 = lst[a]
            if not span * nseg <= i0 < (span + 1) * nseg:
                continue
            for b in range(a + 1, len(lst)):
                i1, p1 = lst[b]
                lo, hi = min(p0[0], p1[0]), max(p0[0], p1[0])
                if any(lo <= lst[c][1][0] <= hi for c in range(a + 1, b)):
                    continue
                yield (walk, i0, p0, i1, p1, lev)


def pull_tight(curve: Curve, max_rounds=10000) -> Curve:
    """Remove all empty bigons against the alpha lines by isotopy."""
    for _ in range(max_rounds):
        curve = curve.tidy()
        surgery = None
        for walk, i0, p0, i1, p1, lev in _bigon_candidates(
            curve, "y", (Fraction(0),)
        ):
            poly = _arc_with_chord(walk, i0, p0, i1, p1)
            if poly is not None and _disk_is_empty(curve, poly):
                surgery = (walk, i0, p0, i1, p1, lev)
                break
        if surgery is None:
            return curve
        curve = _remove_bigon(curve, *surgery)
    raise NonTransverse("pull-tight did not terminate")


def column_tidy(curve: Curve, max_rounds=10000) -> Curve:
    """Remove empty bigons against the two basepoint column families."""
    for _ in range(max_rounds):
        curve = curve.tidy()
        surgery = None
        for walk, i0, p0, i1, p1, lev in _bigon_candidates(
            curve, "x", (Z_COLUMN, W_COLUMN)
        ):
            poly = _arc_with_chord(walk, i0, p0, i1, p1)
            if poly is not None and _disk_is_empty(curve, poly):
                surgery = (walk, i0, p0, i1, p1, lev)
                break
        if surgery is None:
            return curve
        curve = _remove_bigon_transposed(curve, *surgery)
    raise NonTransverse("column tidy did not terminate")


def _arc_with_chord(walk, i0, p0, i1, p1):
    pts = [p0] + walk[i0 + 1 : i1 + 1] + [p1]
    poly = [pts[0]]
    for p in pts[1:]:
        if p != poly[-1]:
            poly.append(p)
    if len(poly) < 3:
        return None
    if poly[0] == poly[-1]:
        poly.pop()
    return poly


def _remove_bigon(curve: Curve, walk, i0, p0, i1, p1, level,
                  transform=None) -> Curve:
    """Splice out the arc between p0 and p1, replacing it by a chord at a
    small clearance eta on the far side of the line.  The surgery is
    applied to all three unrolled copies; the resulting period is
    certified in general position and embedded (after mapping through
    ``transform`` when the caller works in transposed coordinates),
    shrinking eta until the certificate passes, which must happen because
    nothing else touches the closed chord."""
    arc = _arc_with_chord(walk, i0, p0, i1, p1)
    far = 0
    for q in arc:
        if q[1] != level:
            far = -1 if q[1] > level else 1
            break
    assert far != 0
    nseg = len(curve.verts) - 1
    eta = Fraction(1, 4)
    for _ in range(200):
        cut0 = _depth_cut(walk, i0, p0, level + far * eta, backward=True)
        cut1 = _depth_cut(walk, i1, p1, level + far * eta, backward=False)
        if cut0 is None or cut1 is None:
            eta /= 2
            continue
        (j0, q0), (j1, q1) = cut0, cut1
        if j1 <= j0:
            eta /= 2
            continue
        # splice every unrolled copy; copies sit nseg indices apart
        splices = []
        ok = True
        for copy in (-1, 0, 1):
            a = j0 + copy * nseg
            b = j1 + copy * nseg
            if a < 0 or b >= len(walk) - 1:
                continue
            shift = (copy * curve.period[0], copy * curve.period[1])
            splices.append((a, add(q0, shift), b, add(q1, shift)))
        splices.sort()
        for (a1, _, b1, _), (a2, _, _, _) in zip(splices, splices[1:]):
            if a2 <= b1:
                ok = False  # splice regions overlap; need a smaller eta
        if not ok:
            eta /= 2
            continue
        new_walk = []
        pos = 0
        anchor_index = None
        for a, qa, b, qb in splices:
            new_walk += walk[pos : a + 1]
            if (a, qa) == (j0, q0):
                anchor_index = len(new_walk)
            new_walk += [qa, qb]
            pos = b + 1
        new_walk += walk[pos:]
        candidate = _extract_period(new_walk, curve.period, anchor_index)
        if candidate is None:
            eta /= 2
            continue
        try:
            candidate = candidate.tidy()
            final = transform(candidate) if transform else candidate
            assert_general_position(final)
            # only the inserted chord is new material; its translates are
            # part of the candidate preimage and get checked against it
            chord = (q0, q1) if transform is None else (
                (q0[1], q0[0]), (q1[1], q1[0])
            )
            if not _chord_clear(final, chord, {chord[0], chord[1]}):
                raise NonTransverse("replacement chord obstructed")
            return final
        except NonTransverse:
            eta /= 2
    raise NonTransverse("bigon removal failed to embed")


def _transpose(curve: Curve) -> Curve:
    return Curve([(y, x) for x, y in curve.verts],
                 (curve.period[1], curve.period[0]))


def _remove_bigon_transposed(curve, walk, i0, p0, i1, p1, level):
    t = _transpose(curve)
    twalk = [(y, x) for x, y in walk]
    return _remove_bigon(t, twalk, i0, (p0[1], p0[0]), i1, (p1[1], p1[0]),
                         level, transform=_transpose)


def _depth_cut(walk, idx, pt, target, backward):
    """First crossing of the walk with y = target walking from pt, as
    (index of the last kept vertex, crossing point)."""
    cur = pt
    if backward:
        for k in range(idx, -1, -1):
            crossing = seg_line_y_crossing(cur, walk[k], target)
            if crossing:
                return (k, crossing)
            cur = walk[k]
        return None
    for k in range(idx + 1, len(walk)):
        crossing = seg_line_y_crossing(cur, walk[k], target)
        if crossing:
            return (k - 1, crossing)
        cur = walk[k]
    return None


def _extract_period(walk, period, anchor_index) -> Curve | None:
    """One period of the spliced periodic walk, from the middle splice
    start to its period translate."""
    if anchor_index is None or anchor_index >= len(walk):
        return None
    anchor = walk[anchor_index]
    target = add(anchor, period)
    verts = [anchor]
    for k in range(anchor_index + 1, len(walk)):
        prev = verts[-1]
        if prev == target:
            break
        if on_segment(target, prev, walk[k]) and target != prev:
            verts.append(target)
            return Curve(verts, period)
        verts.append(walk[k])
    if verts[-1] == target:
        return Curve(verts, period)
    return None


# -- building diagrams ----------------------------------------------------------


def initial_curve(sign: int) -> Curve:
    """The unknot diagram: a slope -sign line missing all basepoints."""
    if sign == 1:
        return Curve([(Fraction(0), HALF), (Fraction(1), -HALF)], (1, -1))
    return Curve([(Fraction(0), HALF), (Fraction(1), 3 * HALF)], (1, 1))


def build_diagram(t: Tangle, tidy_columns=True) -> LiftedDiagram:
    """Apply the twist word of t to the initial curve and pull tight."""
    curve = initial_curve(t.sign)
    for pos, a in enumerate(t.terms):
        if pos % 2 == 0:
            assert a % 2 == 0
            if tidy_columns:
                curve = column_tidy(curve)
            curve = tau_power(curve, a // 2)
        else:
            curve = sigma_power(curve, a)
        curve = repair_general_position(curve)
        curve = pull_tight(curve)
        curve = simplify_polyline(curve)
        curve = snap_vertices(curve)
        curve = simplify_polyline(curve)
        assert_general_position(curve)
    raw = curve
    curve = pull_tight(curve)
    curve = simplify_polyline(curve)
    assert_general_position(curve)
    assert_embedded(curve)
    return LiftedDiagram(curve=curve, sign=t.sign, tangle=t, raw_curve=raw)


# -- enumeration ----------------------------------------------------------------


def _generator_reps(curve: Curve):
    """Crossings with the alpha lines, one representative per deck orbit,
    realized on the x-axis with x in [0, 1), ordered left to right."""
    reps = set()
    x0, y0, x1, y1 = curve.bbox()
    for dy in range(-int(y1) - 2, -int(y0) + 3):
        shifted = curve.translate((Fraction(0), Fraction(dy)))
        walk = shifted.unroll(1)
        for a, b in zip(walk, walk[1:]):
            pt = seg_line_y_crossing(a, b, Fraction(0))
            if pt is not None:
                reps.add(pt[0] % 1)
    return sorted(reps)


def enumerate_diagram(diag: LiftedDiagram, raw=False):
    """Generators and embedded bigons of the pulled-tight diagram.

    Generators are the alpha-beta intersections, one per deck orbit,
    named x1, x2, ... from left to right along the axis.  A bigon is a
    pair of walk-consecutive crossings on one alpha line; its disk is
    always embedded, and it contributes (source, target, z, w) with the
    counts of basepoints strictly inside.  The source corner is the left
    corner when the disk lies below its line, the right corner above.
    """
    curve = diag.raw_curve if raw else diag.curve
    assert_general_position(curve)
    xs = _generator_reps(curve)
    names = {x: f"x{k+1}" for k, x in enumerate(xs)}
    bigons = []
    seen = set()
    nseg = len(curve.verts) - 1
    x0, y0, x1, y1 = curve.bbox()
    height = int(y1 - y0) + 2
    span = height + 2  # crossings with one line spread over ~height periods
    for dy in range(-height - 1, height + 2):
        lift = curve.translate((Fraction(0), Fraction(dy)))
        walk = lift.unroll(2 * span + 1, start=-span)
        crossings = _walk_crossings(walk, "y", (Fraction(0),))
        by_level = {}
        for idx, pt, lev in crossings:
            by_level.setdefault(lev, []).append((idx, pt, lev))
        pairs = []
        # two crossings of one line bound a bigon when every crossing of
        # that line between them along the walk lies strictly outside the
        # chord: the boundary arc may pass through the line elsewhere
        for level_list in by_level.values():
            for a in range(len(level_list)):
                for b in range(a + 1, len(level_list)):
                    lo = min(level_list[a][1][0], level_list[b][1][0])
                    hi = max(level_list[a][1][0], level_list[b][1][0])
                    if any(
                        lo <= level_list[c][1][0] <= hi
                        for c in range(a + 1, b)
                    ):
                        continue
                    pairs.append((level_list[a], level_list[b]))
        for (i0, p0, lev0), (i1, p1, lev1) in pairs:
            if not span * nseg <= i0 < (span + 1) * nseg:
                continue
            poly = _arc_with_chord(walk, i0, p0, i1, p1)
            if poly is None:
                raise NonTransverse("degenerate bigon arc")
            if not polygon_simple(poly):
                continue  # chord-clear pair whose arc loops around it
            # the disk side at the chord comes from the orientation: the
            # closing chord runs p1 -> p0, with the interior on its left
            # for a positively oriented polygon
            area2 = sum(
                poly[i][0] * poly[(i + 1) % len(poly)][1]
                - poly[(i + 1) % len(poly)][0] * poly[i][1]
                for i in range(len(poly))
            )
            above = (area2 > 0) == (p0[0] > p1[0])
            # both corners must be convex: the boundary arc leaves each
            # corner into the disk side, else this is not an index-one
            # bigon but a disk with a reflex corner
            first = poly[1]
            last = poly[-2]
            side = 1 if above else -1
            if (first[1] - lev0) * side <= 0 or (last[1] - lev0) * side <= 0:
                continue
            if above:
                src, dst = (p0, p1) if p0[0] > p1[0] else (p1, p0)
            else:
                src, dst = (p0, p1) if p0[0] < p1[0] else (p1, p0)
            zc, wc = _count_basepoints(poly)
            if zc == 0 and wc == 0 and not raw:
                raise NonTransverse("empty bigon after pull-tight")
            shift = (src[0] // 1, lev0)
            norm_poly = tuple((q[0] - shift[0], q[1] - shift[1]) for q in poly)
            key = (zc, wc, norm_poly)
            if key in seen:
                continue
            seen.add(key)
            bigons.append(
                Bigon(names[src[0] % 1], names[dst[0] % 1], zc, wc)
            )
    gens = [Generator(names[x], (x, Fraction(0))) for x in xs]
    return gens, bigons


def _count_basepoints(poly):
    x0 = min(p[0] for p in poly)
    y0 = min(p[1] for p in poly)
    x1 = max(p[0] for p in poly)
    y1 = max(p[1] for p in poly)
    zc = wc = 0
    for pt, kind in _basepoints_in_box(x0, y0, x1, y1):
        try:
            if point_in_polygon(pt, poly):
                if kind == "z":
                    zc += 1
                else:
                    wc += 1
        except ValueError:
            raise NonTransverse(f"basepoint {pt} on a bigon boundary")
    return zc, wc


def diagram_complex(t: Tangle, raw_fallback=True):
    """The knot Floer complex of the blow-down tangle t.

    Enumerates the pulled-tight diagram; if the bigon graph does not
    connect all generators (so gradings cannot be pinned), the raw
    pre-pull-tight diagram is enumerated instead and the extra pairs are
    cancelled algebraically, which preserves absolute gradings.
    """
    from .complexes import from_bigons
    from .errors import GradingUnderdetermined

    diag = build_diagram(t)
    gens, bigons = enumerate_diagram(diag)
    try:
        cx = from_bigons([g.name for g in gens],
                         [(b.source, b.target, b.z_count, b.w_count)
                          for b in bigons])
        return cx, diag, (gens, bigons)
    except GradingUnderdetermined:
        if not raw_fallback:
            raise
    rgens, rbigons = enumerate_diagram(diag, raw=True)
    cx = from_bigons([g.name for g in rgens],
                     [(b.source, b.target, b.z_count, b.w_count)
                      for b in rbigons])
    return cx.reduce(), diag, (rgens, rbigons)


# -- gradings from domains -------------------------------------------------------


def _winding(gamma, p):
    """Winding number of the closed polyline gamma around p (exact)."""
    x, y = p
    total = 0
    n = len(gamma)
    for i in range(n):
        ax, ay = gamma[i]
        bx, by = gamma[(i + 1) % n]
        if ay == by:
            continue
        if min(ay, by) <= y < max(ay, by):
            t = Fraction(y - ay, by - ay)
            cx = ax + t * (bx - ax)
            if cx == x:
                raise NonTransverse("winding query on the path")
            if cx > x:
                total += 1 if by > ay else -1
    return total


def _rotation_number(gamma):
    """Turning number of a closed polyline, counted as signed crossings
    of the edge-direction sequence through a reference ray chosen
    transverse to every edge direction."""
    dirs = []
    n = len(gamma)
    for i in range(n):
        a, b = gamma[i], gamma[(i + 1) % n]
        if a != b:
            dirs.append((b[0] - a[0], b[1] - a[1]))
    # reference steeper than every non-vertical direction
    steep = 2
    for ux, uy in dirs:
        if ux != 0:
            steep = max(steep, abs(uy / ux).__ceil__() + 1)
    ref = (Fraction(1), Fraction(steep))
    rot = 0
    m = len(dirs)
    for i in range(m):
        u = dirs[i]
        v = dirs[(i + 1) % m]
        crs = u[0] * v[1] - u[1] * v[0]
        dot = u[0] * v[0] + u[1] * v[1]
        if crs == 0:
            if dot < 0:
                raise NonTransverse("u-turn in grading path")
            continue
        if crs > 0:
            if _ccw_between(u, ref, v):
                rot += 1
        else:
            if _ccw_between(v, ref, u):
                rot -= 1
    return rot


def _ccw_between(u, d, v):
    """Is direction d strictly inside the ccw sweep from u to v (the
    sweep being less than a half turn)?"""
    c1 = u[0] * d[1] - u[1] * d[0]
    c2 = d[0] * v[1] - d[1] * v[0]
    return c1 > 0 and c2 > 0


def _lift_line_crossings(curve: Curve, span):
    """Crossings of the distinguished lift with the alpha lines over
    2*span+1 periods, each as (walk position key, point)."""
    walk = curve.unroll(2 * span + 1, start=-span)
    return walk, _walk_crossings(walk, "y", (Fraction(0),))


def grading_offsets(curve: Curve, reps):
    """Absolute (maslov, alexander) offsets of every generator relative
    to the first one, computed from canonical domains.

    For generators x, y the domain is the winding chain of the closed
    path made of the lift arc between their unique instances with height
    zero on the distinguished lift, and the straight alpha return.  Then
    A(x)-A(y) = n_z - n_w and M(x)-M(y) = mu - 2 n_w, where the index mu
    is e + avg(x-corner) + avg(y-corner) and the Euler measure comes from
    the rotation number minus a quarter of the quadrant multiplicities at
    every interior intersection point.
    """
    x0, y0, x1, y1 = curve.bbox()
    span = 2 * (int(y1 - y0) + 2) + 2
    walk, crossings = _lift_line_crossings(curve, span)
    # instances on the line y = 0, by generator representative
    on_axis = [(i, pt) for i, pt, lev in crossings if lev == 0]
    inst = {}
    for i, pt in on_axis:
        inst.setdefault(pt[0] % 1, []).append((i, pt))
    base = reps[0]
    out = {base: (0, 0)}
    bi, bpt = min(inst[base], key=lambda ip: abs(ip[1][0]))
    for rep in reps[1:]:
        cands = inst.get(rep)
        if not cands:
            raise NonTransverse(f"no axis instance for generator at {rep}")
        yi, ypt = min(cands, key=lambda ip: abs(ip[1][0] - bpt[0]))
        gamma = _domain_path(walk, (bi, bpt), (yi, ypt))
        da, dm = _domain_gradings(curve, gamma, bpt, ypt)
        out[rep] = (dm, da)
    return out


def _domain_path(walk, start, end):
    """Closed path: lift arc from start to end, then back along y = 0."""
    (i0, p0), (i1, p1) = start, end
    if i0 == i1:
        raise NonTransverse("degenerate grading path")
    if i0 < i1:
        arc = [p0] + walk[i0 + 1 : i1 + 1] + [p1]
    else:
        arc = [p0] + list(reversed(walk[i1 + 1 : i0 + 1])) + [p1]
    gamma = [q for q in arc]
    gamma.append(p0)
    # drop immediate repeats
    out = [gamma[0]]
    for q in gamma[1:]:
        if q != out[-1]:
            out.append(q)
    if out[0] == out[-1]:
        out.pop()
    return out


def _domain_gradings(curve: Curve, gamma, corner_x, corner_y):
    gx0 = min(q[0] for q in gamma) - 1
    gy0 = min(q[1] for q in gamma) - 1
    gx1 = max(q[0] for q in gamma) + 1
    gy1 = max(q[1] for q in gamma) + 1
    nz = nw = 0
    for pt, kind in _basepoints_in_box(gx0, gy0, gx1, gy1):
        m = _winding(gamma, pt)
        if kind == "z":
            nz += m
        else:
            nw += m
    # local geometry for certified quadrant sampling
    window = _preimage_segments(curve, gx0, gy0, gx1, gy1)
    for lev in range(int(gy0), int(gy1) + 2):
        window.append(((gx0, Fraction(lev)), (gx1, Fraction(lev))))
    quadrant_total = Fraction(0)
    seen = set()
    for a, b in _preimage_segments(curve, gx0, gy0, gx1, gy1):
        for lev in range(int(gy0), int(gy1) + 2):
            pt = seg_line_y_crossing(a, b, Fraction(lev))
            if pt is None or pt in seen:
                continue
            seen.add(pt)
            quadrant_total += _quadrant_sum(gamma, pt, window)
    rot = _rotation_number(gamma)
    e = rot - quadrant_total / 4
    mu = e + _quadrant_sum(gamma, corner_x, window) / 4 + _quadrant_sum(
        gamma, corner_y, window
    ) / 4
    assert mu.denominator == 1, f"non-integral index {mu}"
    da = nz - nw
    dm = int(mu) - 2 * nw
    return da, dm


def _quadrant_sum(gamma, pt, window):
    """Sum of the domain multiplicities in the four sectors at pt.

    Sample points are pushed off pt along certified directions: the
    probe segment from pt to the sample must cross nothing except at pt
    itself, so the sample sits in the face adjacent to its sector.
    """
    s = 0
    for sx, sy in ((1, 1), (-1, 1), (1, -1), (-1, -1)):
        for ratio in ((2, 3), (3, 2), (1, 5), (5, 1), (3, 7), (7, 3)):
            eps = Fraction(1, 64)
            placed = None
            while eps > Fraction(1, 2 ** 30):
                sample = (pt[0] + sx * ratio[0] * eps, pt[1] + sy * ratio[1] * eps)
                if _probe_clear(pt, sample, window):
                    placed = sample
                    break
                eps /= 8
            if placed is not None:
                break
        else:
            raise NonTransverse(f"cannot place quadrant sample at {pt}")
        s += _winding(gamma, placed)
    return Fraction(s)


def _probe_clear(pt, sample, window) -> bool:
    for a, b in window:
        if on_segment(sample, a, b):
            return False
        d1 = cross(a, b, pt)
        d2 = cross(a, b, sample)
        if (d1 > 0 > d2) or (d1 < 0 < d2):
            d3 = cross(pt, sample, a)
            d4 = cross(pt, sample, b)
            if (d3 > 0 > d4) or (d3 < 0 < d4):
                return False
    return True
