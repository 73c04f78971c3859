"""
Drawings with exact crossing counts, and the two-circle drawing of K_n.

A Drawing places every vertex at a rational point and routes every edge
along a rational polyline. validate_drawing checks the good-drawing
conditions with exact predicates; count_crossings counts transversal
crossings between routes of non-adjacent edges.

The two-circle drawing is built on a cover (u, h) of the plane: u runs
around the circles with period `columns`, h = 0 is the inner circle,
h = 1 the outer circle and h = 2 the limit of the outer edges. A piecewise
linear map sends each column square, split along its diagonal, onto two
triangles between rational polygons, so straight pieces in the cover stay
straight in the plane and every coordinate stays rational.
"""

import math
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from graph import Edge, Graph, make_complete
from geometry import (
    Point,
    collinear_overlap,
    crosses_transversally,
    on_segment,
    segment_intersection,
    snap,
    sub,
)
from logger import LOG

# An annulus edge spans up to half a turn and folds twice per column, so 32
# columns already give it up to 32 segments; 64 is the first refinement.
DEFAULT_COLUMNS = 32
DEFAULT_MAX_N = 14
RING_RADII = (4, 8, 16)
# (columns, snap bits) tried in order when a construction fails validation
REFINEMENTS = ((DEFAULT_COLUMNS, 20), (2 * DEFAULT_COLUMNS, 40))
SEEDS_PER_REFINEMENT = 4
# offsets are drawn from [-1/16, 1/16] of the position grain
PERTURBATION_SCALE = 1000
_BOX_SLACK = 1e-9


class ViolationKind(str, Enum):
    MISSING_ROUTE = "MISSING_ROUTE"
    ENDPOINT_MISMATCH = "ENDPOINT_MISMATCH"
    DUPLICATE_VERTEX = "DUPLICATE_VERTEX"
    DEGENERATE_SEGMENT = "DEGENERATE_SEGMENT"
    VERTEX_ON_EDGE = "VERTEX_ON_EDGE"
    SELF_INTERSECTION = "SELF_INTERSECTION"
    OVERLAP = "OVERLAP"
    ADJACENT_CROSSING = "ADJACENT_CROSSING"
    NON_TRANSVERSAL = "NON_TRANSVERSAL"
    TRIPLE_POINT = "TRIPLE_POINT"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    edges: Tuple[Edge, ...]
    point: Optional[Point] = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "edges": [list(e) for e in self.edges],
            "point": list(self.point) if self.point is not None else None,
            "detail": self.detail,
        }


class InvalidDrawingError(ValueError):
    """A drawing failed validation; the violations are attached."""

    def __init__(self, message: str, violations: Sequence[Violation]):
        super().__init__(message)
        self.violations = list(violations)


@dataclass(frozen=True)
class Drawing:
    host: Graph
    points: Dict[int, Point]
    routes: Dict[Edge, Tuple[Point, ...]]
    # how a constructed drawing was produced: grid, columns, seed and offsets
    construction: Optional[Dict[str, Any]] = None

    def __post_init__(self):
        # routes are keyed (low, high) like Graph.edges()
        normalized: Dict[Edge, Tuple[Point, ...]] = {}
        for (u, v), route in self.routes.items():
            key = (min(u, v), max(u, v))
            if key in normalized:
                raise ValueError(f"edge {key} has two routes")
            normalized[key] = route
        object.__setattr__(self, "routes", normalized)

    def to_dict(self) -> dict:
        return {
            "n": self.host.n,
            "m": self.host.m,
            "points": {str(v): list(p) for v, p in sorted(self.points.items())},
            "routes": {f"{u}-{v}": [list(p) for p in route] for (u, v), route in sorted(self.routes.items())},
            "construction": self.construction,
        }


@dataclass(frozen=True)
class CrossingCount:
    total: int
    pairs: Dict[Tuple[Edge, Edge], int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "pairs": [
                {"edges": [list(e), list(f)], "crossings": count}
                for (e, f), count in sorted(self.pairs.items())
            ],
        }


def straight_line_drawing(g: Graph, points: Dict[int, Point]) -> Drawing:
    """Every edge drawn as the segment between its endpoints"""
    routes = {(u, v): (points[u], points[v]) for u, v in g.edges()}
    return Drawing(g, dict(points), routes)


@dataclass
class _Segment:
    edge: Edge
    index: int
    a: Point
    b: Point
    xmin: float
    xmax: float
    ymin: float
    ymax: float


def _segments(d: Drawing) -> List[_Segment]:
    out = []
    for edge, route in sorted(d.routes.items()):
        for i in range(len(route) - 1):
            a, b = route[i], route[i + 1]
            xa, ya, xb, yb = float(a[0]), float(a[1]), float(b[0]), float(b[1])
            out.append(_Segment(
                edge, i, a, b,
                min(xa, xb) - _BOX_SLACK, max(xa, xb) + _BOX_SLACK,
                min(ya, yb) - _BOX_SLACK, max(ya, yb) + _BOX_SLACK,
            ))
    return out


def _adjacent(e: Edge, f: Edge) -> bool:
    return bool(set(e) & set(f))


def _local_rays(route: Tuple[Point, ...], p: Point, index: int) -> Tuple[Point, Point]:
    """Directions of the two pieces of a route leaving p, found on segment `index`"""
    a, b = route[index], route[index + 1]
    if p == b:
        index += 1
        a, b = route[index], route[index + 1]
    if p == a:
        return sub(route[index - 1], p), sub(b, p)
    return sub(a, p), sub(b, p)


def _structural_violations(d: Drawing) -> List[Violation]:
    violations = []
    seen: Dict[Point, int] = {}
    for v in range(d.host.n):
        if v not in d.points:
            violations.append(Violation(ViolationKind.ENDPOINT_MISMATCH, (), None, f"vertex {v} has no point"))
            continue
        p = d.points[v]
        if p in seen:
            violations.append(Violation(
                ViolationKind.DUPLICATE_VERTEX, (), p, f"vertices {seen[p]} and {v} share a point"
            ))
        else:
            seen[p] = v

    edges = set(d.host.edges())
    for e in sorted(edges - set(d.routes)):
        violations.append(Violation(ViolationKind.MISSING_ROUTE, (e,), None, "edge has no route"))

    for e, route in sorted(d.routes.items()):
        if e not in edges:
            violations.append(Violation(ViolationKind.ENDPOINT_MISMATCH, (e,), None, "route for a non-edge"))
            continue
        if len(route) < 2:
            violations.append(Violation(ViolationKind.DEGENERATE_SEGMENT, (e,), None, "route has fewer than two points"))
            continue
        u, v = e
        ends = {route[0], route[-1]}
        if u in d.points and v in d.points and ends != {d.points[u], d.points[v]}:
            violations.append(Violation(ViolationKind.ENDPOINT_MISMATCH, (e,), route[0], "route does not join its endpoints"))
        for i in range(len(route) - 1):
            if route[i] == route[i + 1]:
                violations.append(Violation(ViolationKind.DEGENERATE_SEGMENT, (e,), route[i], f"zero-length piece {i}"))
    return violations


def _vertex_violations(d: Drawing, segments: List[_Segment]) -> List[Violation]:
    violations = []
    flagged = set()
    for v, p in sorted(d.points.items()):
        x, y = float(p[0]), float(p[1])
        for s in segments:
            if not (s.xmin <= x <= s.xmax and s.ymin <= y <= s.ymax):
                continue
            if not on_segment(p, s.a, s.b):
                continue
            route = d.routes[s.edge]
            last = len(route) - 2
            allowed = v in s.edge and (
                (s.index == 0 and p == route[0]) or (s.index == last and p == route[-1])
            )
            if not allowed and (v, s.edge) not in flagged:
                flagged.add((v, s.edge))
                violations.append(Violation(
                    ViolationKind.VERTEX_ON_EDGE, (s.edge,), p, f"route passes through vertex {v}"
                ))
    return violations


def _analyze(d: Drawing) -> Tuple[List[Violation], Dict[Tuple[Edge, Edge], int]]:
    violations = _structural_violations(d)
    if violations:
        return violations, {}

    segments = _segments(d)
    violations.extend(_vertex_violations(d, segments))
    vertex_points = set(d.points.values())

    segments.sort(key=lambda s: s.xmin)
    hits: Dict[Tuple[Edge, Edge], Dict[Point, Tuple[int, int]]] = {}
    for i, s in enumerate(segments):
        for t in segments[i + 1:]:
            if t.xmin > s.xmax:
                break
            if t.ymin > s.ymax or s.ymin > t.ymax:
                continue
            first, second = (s, t) if (s.edge, s.index) < (t.edge, t.index) else (t, s)

            if first.edge == second.edge:
                consecutive = second.index == first.index + 1
                if collinear_overlap(first.a, first.b, second.a, second.b):
                    violations.append(Violation(ViolationKind.SELF_INTERSECTION, (first.edge,), first.b, "route doubles back"))
                    continue
                p = segment_intersection(first.a, first.b, second.a, second.b)
                if p is not None and not (consecutive and p == first.b):
                    violations.append(Violation(ViolationKind.SELF_INTERSECTION, (first.edge,), p, "route meets itself"))
                continue

            if collinear_overlap(first.a, first.b, second.a, second.b):
                violations.append(Violation(
                    ViolationKind.OVERLAP, (first.edge, second.edge), first.a, "routes share a segment"
                ))
                continue
            p = segment_intersection(first.a, first.b, second.a, second.b)
            if p is None or p in vertex_points:
                continue
            hits.setdefault((first.edge, second.edge), {}).setdefault(p, (first.index, second.index))

    pairs: Dict[Tuple[Edge, Edge], int] = {}
    on_point: Dict[Point, set] = {}
    for (e, f), found in sorted(hits.items()):
        for p, (i, j) in found.items():
            on_point.setdefault(p, set()).update((e, f))
            if _adjacent(e, f):
                violations.append(Violation(ViolationKind.ADJACENT_CROSSING, (e, f), p, "adjacent edges meet"))
                continue
            a_in, a_out = _local_rays(d.routes[e], p, i)
            b_in, b_out = _local_rays(d.routes[f], p, j)
            if not crosses_transversally(a_in, a_out, b_in, b_out):
                violations.append(Violation(ViolationKind.NON_TRANSVERSAL, (e, f), p, "routes touch without crossing"))
                continue
            pairs[(e, f)] = pairs.get((e, f), 0) + 1

    for p, edges in sorted(on_point.items()):
        if len(edges) >= 3:
            violations.append(Violation(
                ViolationKind.TRIPLE_POINT, tuple(sorted(edges)), p, f"{len(edges)} routes through one point"
            ))
    return violations, pairs


def validate_drawing(d: Drawing) -> List[Violation]:
    """All good-drawing violations of d; an empty list means the drawing is valid"""
    return _analyze(d)[0]


def count_crossings(d: Drawing) -> CrossingCount:
    """
    Count transversal crossings between routes of non-adjacent edges.

    Raises:
        InvalidDrawingError: If the drawing is not a good drawing
    """
    violations, pairs = _analyze(d)
    if violations:
        raise InvalidDrawingError(
            f"drawing has {len(violations)} violations, first: {violations[0].kind.value}", violations
        )
    total = sum(pairs.values())
    LOG.debug(f"Counted {total} crossings over {len(pairs)} edge pairs (n={d.host.n}, m={d.host.m})")
    return CrossingCount(total, pairs)


# ---------------------------------------------------------------------------
# two-circle drawing of K_n


def _circle_sizes(n: int) -> Tuple[int, int]:
    return n // 2, n - n // 2


def _wrap_displacement(raw: Fraction, period: Fraction) -> Fraction:
    """Representative of raw modulo period in (-period/2, period/2]"""
    half = period / 2
    d = raw - period * math.floor(raw / period)
    if d > half:
        d -= period
    return d


def _interleaved(a: int, b: int, c: int, d: int) -> bool:
    # chords {a, b} and {c, d} on a circle with positions in cyclic label order
    a, b = sorted((a, b))
    return (a < c < b) != (a < d < b)


class _Rings:
    """Piecewise linear map from the cover (u, h) onto nested rational polygons"""

    def __init__(self, columns: int, bits: int):
        self.columns = columns
        self.corners = [
            (snap(math.cos(2 * math.pi * c / columns), bits), snap(math.sin(2 * math.pi * c / columns), bits))
            for c in range(columns)
        ]

    def image(self, u: Fraction, h: Fraction) -> Point:
        level = 0 if h <= 1 else 1
        lo, hi = RING_RADII[level], RING_RADII[level + 1]
        hh = h - level
        base = math.floor(u)
        lam = u - base
        b0 = self.corners[base % self.columns]
        b1 = self.corners[(base + 1) % self.columns]
        a0 = (lo * b0[0], lo * b0[1])
        a1 = (lo * b1[0], lo * b1[1])
        z0 = (hi * b0[0], hi * b0[1])
        z1 = (hi * b1[0], hi * b1[1])
        if lam >= hh:
            return (
                a0[0] + lam * (a1[0] - a0[0]) + hh * (z1[0] - a1[0]),
                a0[1] + lam * (a1[1] - a0[1]) + hh * (z1[1] - a1[1]),
            )
        return (
            a0[0] + hh * (z0[0] - a0[0]) + lam * (z1[0] - z0[0]),
            a0[1] + hh * (z0[1] - a0[1]) + lam * (z1[1] - z0[1]),
        )

    def polyline(self, start: Tuple[Fraction, Fraction], end: Tuple[Fraction, Fraction]) -> List[Point]:
        """Image of a straight cover piece inside one level, with a point at every fold"""
        (u0, h0), (u1, h1) = start, end
        level = 0 if max(h0, h1) <= 1 else 1
        du, dh = u1 - u0, h1 - h0
        params = {Fraction(0), Fraction(1)}
        if du != 0:
            lo, hi = sorted((u0, u1))
            for k in range(math.floor(lo) + 1, math.ceil(hi)):
                params.add((k - u0) / du)
        if du != dh:
            # diagonal u - c = h - level inside column c
            for c in range(math.floor(min(u0, u1)), math.floor(max(u0, u1)) + 1):
                s = (h0 - level - u0 + c) / (du - dh)
                if 0 < s < 1 and c <= u0 + s * du <= c + 1:
                    params.add(s)
        out: List[Point] = []
        for s in sorted(params):
            p = self.image(u0 + s * du, h0 + s * dh)
            if not out or out[-1] != p:
                out.append(p)
        return out


def _offsets(n: int, columns: int, seed: Optional[int]) -> List[Fraction]:
    """Seeded position offsets; all zero when seed is None"""
    if seed is None:
        return [Fraction(0)] * n
    k_in, k_out = _circle_sizes(n)
    # every nonzero position difference is a multiple of grain
    grain = Fraction(columns) / (2 * k_in * k_out)
    rng = random.Random(seed)
    return [
        grain * Fraction(rng.randint(-PERTURBATION_SCALE, PERTURBATION_SCALE), 16 * PERTURBATION_SCALE)
        for _ in range(n)
    ]


def _positions(n: int, columns: int, seed: Optional[int]) -> Tuple[List[Fraction], List[Fraction], List[Fraction]]:
    """
    Equally spaced and offset cover positions.

    Returns:
        (base positions, drawn positions, heights) indexed by vertex; inner
        vertices are 0..floor(n/2)-1 at h = 0, outer vertices follow at h = 1.
        Drawn positions equal the base ones when seed is None.
    """
    k_in, k_out = _circle_sizes(n)
    period = Fraction(columns)
    base = [period * i / k_in for i in range(k_in)]
    base += [period * (2 * j + 1) / (2 * k_out) for j in range(k_out)]
    drawn = [p + off for p, off in zip(base, _offsets(n, columns, seed))]
    heights = [Fraction(0)] * k_in + [Fraction(1)] * k_out
    return base, drawn, heights


def _build_cylindrical(n: int, columns: int, bits: int, seed: Optional[int]) -> Drawing:
    k_in, k_out = _circle_sizes(n)
    rings = _Rings(columns, bits)
    period = Fraction(columns)
    base, pos, heights = _positions(n, columns, seed)
    points = {v: rings.image(pos[v], heights[v]) for v in range(n)}
    routes: Dict[Edge, Tuple[Point, ...]] = {}

    inner = range(k_in)
    outer = range(k_in, n)

    for a in inner:
        for b in inner:
            if a < b:
                routes[(a, b)] = (points[a], points[b])

    for a in inner:
        for b in outer:
            shift = _wrap_displacement(base[b] - base[a], period) - (base[b] - base[a])
            top = (pos[b] + shift, Fraction(1))
            routes[(a, b)] = tuple(rings.polyline((pos[a], Fraction(0)), top))

    outer_edges = [(a, b) for a in outer for b in outer if a < b]
    # widest spans nest outermost
    ranked = sorted(outer_edges, key=lambda e: (-(base[e[1]] - base[e[0]]), e))
    sigma = period / (4 * k_out)
    for rank, (a, b) in enumerate(ranked):
        lift = 1 + Fraction(len(ranked) - rank, len(ranked) + 1)
        corners = [
            (pos[a], Fraction(1)),
            (pos[a] + sigma, lift),
            (pos[b] - sigma, lift),
            (pos[b], Fraction(1)),
        ]
        path: List[Point] = []
        for start, end in zip(corners, corners[1:]):
            piece = rings.polyline(start, end)
            path.extend(piece if not path else piece[1:])
        routes[(a, b)] = tuple(path)

    offsets = [drawn - equal for drawn, equal in zip(pos, base)]
    construction = {
        "columns": columns,
        "grid_bits": bits,
        "seed": seed,
        "offsets": {str(v): off for v, off in enumerate(offsets)},
    }
    return Drawing(make_complete(n), points, routes, construction)


def cylindrical_drawing(n: int, max_n: int = DEFAULT_MAX_N) -> Drawing:
    """
    Two-circle drawing of K_n with exact rational coordinates.

    floor(n/2) vertices sit on the inner circle and ceil(n/2) on the outer
    circle, equally spaced with a half-step offset between the circles.
    Inner pairs are chords, outer pairs run outside the outer circle nested
    by span, and mixed pairs follow the shortest way around the annulus
    (ties turn counterclockwise).

    The equally spaced drawing is tried first at each refinement. From n = 9
    on it puts three routes through one point, so the builder then moves
    each vertex by a seeded offset of at most 1/16 of the position grain.
    A perturbed result is logged at WARNING, and the seed and offsets are
    kept in Drawing.construction.

    Raises:
        ValueError: If n is outside 3..max_n
        InvalidDrawingError: If no refinement produced a valid drawing
    """
    if not 3 <= n <= max_n:
        raise ValueError(f"cylindrical drawing supports 3 <= n <= {max_n}, got {n}")

    seeds: List[Optional[int]] = [None, *range(SEEDS_PER_REFINEMENT)]
    last: List[Violation] = []
    for columns, bits in REFINEMENTS:
        for seed in seeds:
            d = _build_cylindrical(n, columns, bits, seed)
            last = validate_drawing(d)
            if not last:
                if seed is None:
                    LOG.debug(f"Two-circle drawing of K_{n} valid with {columns} columns, 2^-{bits} grid, equally spaced")
                else:
                    LOG.warning(
                        f"Two-circle drawing of K_{n} uses perturbed positions: seed {seed}, "
                        f"{columns} columns, 2^-{bits} grid"
                    )
                return d
            label = "equally spaced" if seed is None else f"seed {seed}"
            LOG.warning(
                f"Two-circle drawing of K_{n} failed validation ({last[0].kind.value}, {len(last)} violations) "
                f"with {columns} columns, {label}; retrying"
            )
    raise InvalidDrawingError(f"no valid two-circle drawing of K_{n} found", last)


def cylindrical_count(n: int) -> int:
    """
    Crossings of the two-circle drawing, counted without geometry.

    Inner and outer pairs cross when their endpoints interleave around the
    circle. Two annulus edges from inner a, c to outer b, d, with wrapped
    displacements d1, d2, cross once for each integer t with
    u_a - u_c - t strictly between 0 and d2 - d1 (positions in turns).
    """
    if n < 3:
        raise ValueError(f"cylindrical count needs n >= 3, got {n}")
    k_in, k_out = _circle_sizes(n)

    total = 0
    for labels in (range(k_in), range(k_out)):
        chords = [(a, b) for a in labels for b in labels if a < b]
        for i, (a, b) in enumerate(chords):
            for c, d in chords[i + 1:]:
                if len({a, b, c, d}) == 4 and _interleaved(a, b, c, d):
                    total += 1

    inner_pos = [Fraction(i, k_in) for i in range(k_in)]
    outer_pos = [Fraction(2 * j + 1, 2 * k_out) for j in range(k_out)]
    spokes = [
        (inner_pos[a], _wrap_displacement(outer_pos[b] - inner_pos[a], Fraction(1)), a, b)
        for a in range(k_in) for b in range(k_out)
    ]
    for i, (ua, d1, a, b) in enumerate(spokes):
        for uc, d2, c, d in spokes[i + 1:]:
            if a == c or b == d:
                continue
            gap = d2 - d1
            lo, hi = sorted((Fraction(0), gap))
            for t in range(-2, 3):
                delta = ua - uc - t
                if lo < delta < hi:
                    total += 1
    return total


def drawing_to_json(d: Drawing) -> dict:
    return d.to_dict()


def render_svg(d: Drawing, path: str, title: Optional[str] = None) -> str:
    """Write an SVG picture of the drawing for inspection"""
    fig, ax = plt.subplots(figsize=(8, 8))
    for route in d.routes.values():
        xs = [float(p[0]) for p in route]
        ys = [float(p[1]) for p in route]
        ax.plot(xs, ys, color="#3b6ea5", linewidth=0.6)
    xs = [float(p[0]) for _, p in sorted(d.points.items())]
    ys = [float(p[1]) for _, p in sorted(d.points.items())]
    ax.scatter(xs, ys, s=18, color="#b03a2e", zorder=3)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    fig.savefig(path, format="svg", bbox_inches="tight")
    plt.close(fig)
    LOG.info(f"SVG drawing written to {path}")
    return path
