"""Exact planar geometry helpers for the lifted diagram engine.

All coordinates are Fractions; every predicate is decided exactly.
"""

from __future__ import annotations

from fractions import Fraction

Point = tuple  # (Fraction, Fraction)


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def add(p, q):
    return (p[0] + q[0], p[1] + q[1])


def sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def cross(o, a, b):
    """Orientation of the triple (o, a, b): > 0 for a left turn."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def on_segment(p, a, b) -> bool:
    """Is p on the closed segment [a, b]?"""
    if cross(a, b, p) != 0:
        return False
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_intersect(a, b, c, d, *, closed=True) -> bool:
    """Do the segments [a, b] and [c, d] meet?

    With closed=False, meetings at shared segment endpoints only are
    ignored (used for consecutive edges of one polyline).
    """
    d1 = cross(c, d, a)
    d2 = cross(c, d, b)
    d3 = cross(a, b, c)
    d4 = cross(a, b, d)
    if ((d1 > 0 > d2) or (d1 < 0 < d2)) and ((d3 > 0 > d4) or (d3 < 0 < d4)):
        return True
    touches = []
    if d1 == 0 and on_segment(a, c, d):
        touches.append(a)
    if d2 == 0 and on_segment(b, c, d):
        touches.append(b)
    if d3 == 0 and on_segment(c, a, b):
        touches.append(c)
    if d4 == 0 and on_segment(d, a, b):
        touches.append(d)
    if not touches:
        return False
    if closed:
        return True
    ends = {a, b} & {c, d}
    return any(t not in ends for t in touches)


def seg_line_y_crossing(a, b, level):
    """Interior crossing of [a, b] with the line y = level, or None.

    Callers maintain general position: no polyline vertex sits on a line
    of interest, so endpoint incidences do not occur.
    """
    if a[1] == b[1] or (a[1] - level) * (b[1] - level) > 0:
        return None
    if a[1] == level or b[1] == level:
        return None
    t = (level - a[1]) / (b[1] - a[1])
    return (a[0] + t * (b[0] - a[0]), level)


def seg_line_x_crossing(a, b, level):
    if a[0] == b[0] or (a[0] - level) * (b[0] - level) > 0:
        return None
    if a[0] == level or b[0] == level:
        return None
    t = (level - a[0]) / (b[0] - a[0])
    return (level, a[1] + t * (b[1] - a[1]))


def point_in_polygon(p, poly) -> bool:
    """Exact ray casting; p must not lie on the boundary."""
    x, y = p
    inside = False
    n = len(poly)
    for i in range(n):
        ax, ay = poly[i]
        bx, by = poly[(i + 1) % n]
        if ay == by:
            continue
        if not (min(ay, by) <= y < max(ay, by)):
            continue
        t = Fraction(y - ay, by - ay)
        cx = ax + t * (bx - ax)
        if cx == x:
            raise ValueError("query point on polygon boundary")
        if cx > x:
            inside = not inside
    return inside


def point_on_polygon(p, poly) -> bool:
    n = len(poly)
    return any(on_segment(p, poly[i], poly[(i + 1) % n]) for i in range(n))


def polygon_simple(poly) -> bool:
    """Is the closed polygon free of self-intersections?"""
    n = len(poly)
    boxes = []
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if a == b:
            return False
        boxes.append(
            (min(a[0], b[0]), min(a[1], b[1]), max(a[0], b[0]), max(a[1], b[1]))
        )
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        bx0, by0, bx1, by1 = boxes[i]
        for j in range(i + 1, n):
            ox0, oy0, ox1, oy1 = boxes[j]
            if ox1 < bx0 or ox0 > bx1 or oy1 < by0 or oy0 > by1:
                continue
            c, d = poly[j], poly[(j + 1) % n]
            adjacent = (j == i + 1) or (i == 0 and j == n - 1)
            if segments_intersect(a, b, c, d, closed=not adjacent):
                return False
    return True


def segment_meets_open_polygon(a, b, poly) -> bool:
    """Does the closed segment [a, b] meet the open region bounded by the
    simple polygon?  Touching the boundary only does not count."""
    mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
    for p in (a, b, mid):
        if not point_on_polygon(p, poly) and point_in_polygon(p, poly):
            return True
    n = len(poly)
    for i in range(n):
        c, d = poly[i], poly[(i + 1) % n]
        d1 = cross(c, d, a)
        d2 = cross(c, d, b)
        d3 = cross(a, b, c)
        d4 = cross(a, b, d)
        if ((d1 > 0 > d2) or (d1 < 0 < d2)) and ((d3 > 0 > d4) or (d3 < 0 < d4)):
            return True  # proper crossing enters the interior
    return False
