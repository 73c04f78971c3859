"""
Exact planar predicates on rational points.

Points are (x, y) tuples of Fractions (ints are accepted). All tests are
sign tests on exact cross products, so there is no tolerance anywhere.
"""

from fractions import Fraction
from typing import Optional, Tuple, Union

Number = Union[int, Fraction]
Point = Tuple[Fraction, Fraction]
Vector = Tuple[Fraction, Fraction]


def point(x: Number, y: Number) -> Point:
    return (Fraction(x), Fraction(y))


def sub(p: Point, q: Point) -> Vector:
    return (p[0] - q[0], p[1] - q[1])


def cross(u: Vector, v: Vector) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def dot(u: Vector, v: Vector) -> Fraction:
    return u[0] * v[0] + u[1] * v[1]


def orientation(a: Point, b: Point, c: Point) -> int:
    """+1 if a, b, c turn counterclockwise, -1 if clockwise, 0 if collinear"""
    area = cross(sub(b, a), sub(c, a))
    return (area > 0) - (area < 0)


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """p lies on the closed segment ab"""
    if orientation(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def collinear_overlap(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Segments ab and cd are collinear and share more than one point"""
    if orientation(a, b, c) != 0 or orientation(a, b, d) != 0:
        return False
    # project on the dominant axis of ab
    axis = 0 if abs(b[0] - a[0]) >= abs(b[1] - a[1]) else 1
    lo1, hi1 = sorted((a[axis], b[axis]))
    lo2, hi2 = sorted((c[axis], d[axis]))
    return min(hi1, hi2) > max(lo1, lo2)


def segment_intersection(a: Point, b: Point, c: Point, d: Point) -> Optional[Point]:
    """
    The single common point of segments ab and cd, if any.

    Collinear overlapping segments return None; callers check
    collinear_overlap first.
    """
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)

    if o1 == 0 and o2 == 0:
        # collinear: only a shared endpoint counts as a single point
        for p in (c, d):
            if on_segment(p, a, b) and not collinear_overlap(a, b, c, d):
                return p
        return None

    if o1 * o2 > 0 or o3 * o4 > 0:
        return None

    if o1 == 0:
        return c if on_segment(c, a, b) else None
    if o2 == 0:
        return d if on_segment(d, a, b) else None
    if o3 == 0:
        return a if on_segment(a, c, d) else None
    if o4 == 0:
        return b if on_segment(b, c, d) else None

    r = sub(b, a)
    s = sub(d, c)
    t = cross(sub(c, a), s) / cross(r, s)
    return (a[0] + t * r[0], a[1] + t * r[1])


def inside_ccw_sector(start: Vector, end: Vector, v: Vector) -> bool:
    """
    v points strictly inside the sector swept counterclockwise from start to end.

    Rays along start or end are outside. Handles convex, straight and reflex sectors.
    """
    turn = cross(start, end)
    if turn > 0:
        return cross(start, v) > 0 and cross(v, end) > 0
    if turn < 0:
        # reflex: complement of the closed convex sector from end to start
        return not (cross(end, v) >= 0 and cross(v, start) >= 0)
    if dot(start, end) < 0:
        return cross(start, v) > 0
    # start and end coincide: the sector is everything except that ray
    return not (cross(start, v) == 0 and dot(start, v) > 0)


def crosses_transversally(a_in: Vector, a_out: Vector, b_in: Vector, b_out: Vector) -> bool:
    """
    Two curves through a common point cross there.

    Each curve is given by the directions of its two local rays. The curves
    cross iff the rays of the second lie strictly on opposite sides of the first.
    """
    first = inside_ccw_sector(a_in, a_out, b_in) and inside_ccw_sector(a_out, a_in, b_out)
    second = inside_ccw_sector(a_out, a_in, b_in) and inside_ccw_sector(a_in, a_out, b_out)
    return first or second


def snap(value: float, bits: int) -> Fraction:
    """Nearest rational with denominator 2**bits"""
    scale = 1 << bits
    return Fraction(round(value * scale), scale)
