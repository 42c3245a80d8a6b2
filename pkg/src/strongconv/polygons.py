"""Exact 2D polygon kernel: halfplane intersection, hulls, support queries.

All predicates are decided by exact rational comparison.  The halfplane
intersection uses the classic rotating-deque algorithm over planes sorted by
normal angle, with a synthetic bounding box so emptiness and degenerate
(segment / point) regions are detected exactly.  Degenerate regions are
first-class citizens here; nothing assumes full dimensionality.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import InputError, KernelInvariantError, UnboundedBodyError
from .numeric import rat

Point = tuple[Fraction, Fraction]
Normal = tuple[int, int]
Plane = tuple[Normal, Fraction]  # (a, b) meaning a . x <= b, a integer coprime


def angle_key(v: Sequence) -> tuple:
    """Total order key for the angle of a nonzero vector, sweeping [0, 2pi).

    Within each half-turn the cotangent -x/y increases strictly with the
    angle, so (half, on_axis, -x/y) orders directions without trigonometry.
    """
    x, y = v
    if x == 0 and y == 0:
        raise InputError("zero vector has no direction")
    if y > 0 or (y == 0 and x > 0):
        half = 0
    else:
        half = 1
    if y == 0:
        return (half, 0, Fraction(0))
    return (half, 1, Fraction(-x, y))


def normalize_plane(a: Sequence, b) -> Plane:
    """Scale (a, b) by the unique positive rational making a integer coprime."""
    ax, ay = rat(a[0]), rat(a[1])
    bb = rat(b)
    if ax == 0 and ay == 0:
        raise InputError("halfplane with zero normal")
    den = ax.denominator * ay.denominator // gcd(ax.denominator, ay.denominator)
    ix, iy = int(ax * den), int(ay * den)
    g = gcd(abs(ix), abs(iy))
    return ((ix // g, iy // g), bb * den / g)


def _dedupe_min_offset(planes: Iterable[Plane]) -> list[Plane]:
    best: dict[Normal, Fraction] = {}
    for a, b in planes:
        cur = best.get(a)
        if cur is None or b < cur:
            best[a] = b
    return [(a, b) for a, b in best.items()]


def _check_positive_span(normals: Sequence[Normal]) -> None:
    """Normals sorted by angle must positively span the plane (bounded region)."""
    n = len(normals)
    if n < 3:
        raise UnboundedBodyError("halfplane normals do not positively span the plane")
    for i in range(n):
        ux, uy = normals[i]
        vx, vy = normals[(i + 1) % n]
        if ux * vy - uy * vx <= 0:
            raise UnboundedBodyError("halfplane normals leave an open direction (unbounded)")


_CARDINALS: tuple[Normal, ...] = ((1, 0), (0, 1), (-1, 0), (0, -1))


def _line_intersection(p1, p2) -> Point:
    (a1, b1) = p1[0], p1[1]
    (a2, b2) = p2[0], p2[1]
    det = a1[0] * a2[1] - a1[1] * a2[0]
    if det == 0:
        raise KernelInvariantError("parallel adjacent facets in polygon walk")
    x = (b1 * a2[1] - b2 * a1[1]) / det
    y = (a1[0] * b2 - a2[0] * b1) / det
    return (x, y)


def _strictly_out(plane, point: Point) -> bool:
    (ax, ay), b = plane[0], plane[1]
    return ax * point[0] + ay * point[1] > b


def _run_deque(items: list[tuple[Normal, Fraction, int]]):
    """Rotating-deque halfplane intersection on angle-sorted planes.

    items: (normal, offset, tag) sorted by angle_key(normal); unique normals.
    Returns the active sublist or None when the intersection is empty.
    """
    dq: deque = deque()
    for h in items:
        while len(dq) >= 2 and _strictly_out(h, _line_intersection(dq[-1], dq[-2])):
            dq.pop()
        while len(dq) >= 2 and _strictly_out(h, _line_intersection(dq[0], dq[1])):
            dq.popleft()
        if dq:
            (lx, ly) = dq[-1][0]
            (hx, hy) = h[0]
            if lx * hy - ly * hx == 0:
                if lx * hx + ly * hy > 0:
                    # same direction: keep the tighter offset
                    if h[1] < dq[-1][1]:
                        dq.pop()
                        dq.append(h)
                    continue
                # opposite directions became adjacent: the slab between them
                # is pinched away, so the region is empty
                return None
        dq.append(h)
    changed = True
    while changed and len(dq) >= 3:
        changed = False
        if _strictly_out(dq[0], _line_intersection(dq[-1], dq[-2])):
            dq.pop()
            changed = True
        if len(dq) >= 3 and _strictly_out(dq[-1], _line_intersection(dq[0], dq[1])):
            dq.popleft()
            changed = True
    if len(dq) < 3:
        return None
    return list(dq)


@dataclass(frozen=True)
class Polygon2D:
    """Intersection of halfplanes: active planes in angular order plus corners.

    corners[i] is the intersection point of planes[i] and planes[i+1]
    (cyclically); walking the corners in order traverses the boundary CCW.
    Degenerate regions (segments, points) simply have repeated corners.
    """

    planes: tuple[Plane, ...]
    akeys: tuple[tuple, ...]
    corners: tuple[Point, ...]

    def vertex_cycle(self) -> tuple[Point, ...]:
        """Boundary vertices CCW with consecutive duplicates removed."""
        out: list[Point] = []
        for c in self.corners:
            if not out or out[-1] != c:
                out.append(c)
        while len(out) > 1 and out[0] == out[-1]:
            out.pop()
        return tuple(out)

    def vertex_set(self) -> tuple[Point, ...]:
        return tuple(sorted(set(self.corners)))

    def area2(self) -> Fraction:
        cyc = self.corners
        total = Fraction(0)
        for i in range(len(cyc)):
            x1, y1 = cyc[i]
            x2, y2 = cyc[(i + 1) % len(cyc)]
            total += x1 * y2 - x2 * y1
        return total

    def is_full_dim(self) -> bool:
        return self.area2() > 0

    def minimal_facets(self) -> tuple[Plane, ...]:
        """Facets with positive edge length; unique minimal H-rep when full-dim."""
        n = len(self.planes)
        kept = []
        for i in range(n):
            if self.corners[i - 1] != self.corners[i]:
                kept.append(self.planes[i])
        return tuple(kept)

    def support(self, direction: Sequence) -> tuple[Fraction, Point]:
        """Exact support value and a deterministic maximizing vertex."""
        dx, dy = rat(direction[0]), rat(direction[1])
        best = None
        best_pt = None
        for p in self.corners:
            v = dx * p[0] + dy * p[1]
            if best is None or v > best or (v == best and p < best_pt):
                best, best_pt = v, p
        return best, best_pt


def supports_on_sorted_dirs(poly: Polygon2D, dirs: Sequence[tuple[tuple, Normal]]):
    """Support value and argmax vertex of poly for each query direction.

    dirs must be sorted ascending by angle_key and is traversed with a single
    merge walk over the polygon's angularly sorted facet normals: the argmax
    vertex for a direction between the normals of facets i and i+1 is the
    corner shared by those facets.
    """
    pkeys = poly.akeys
    corners = poly.corners
    n = len(pkeys)
    out = []
    j = 0
    for key, a in dirs:
        if key < pkeys[0]:
            idx = n - 1  # direction wraps before the first facet normal
        else:
            while j + 1 < n and pkeys[j + 1] <= key:
                j += 1
            idx = j
        v = corners[idx]
        out.append((a[0] * v[0] + a[1] * v[1], v))
    return out


@dataclass(frozen=True)
class Fan2D:
    """Angle-sorted unique facet normals of a body, reusable across erosions.

    Intersecting the same fan with different offsets is the hot operation of
    the separation verifiers, so the sorted order, angle keys and bounding-box
    insertion spots are precomputed once.
    """

    normals: tuple[Normal, ...]
    akeys: tuple[tuple, ...]
    base_offsets: tuple[Fraction, ...]
    max_abs_normal: int
    cardinal_inserts: tuple[tuple[int, Normal], ...]  # (position, normal) of missing cardinals


def build_fan(planes: Iterable[Plane]) -> Fan2D:
    ded = _dedupe_min_offset(normalize_plane(a, b) for a, b in planes)
    ded.sort(key=lambda p: angle_key(p[0]))
    normals = tuple(p[0] for p in ded)
    _check_positive_span(normals)
    akeys = tuple(angle_key(a) for a in normals)
    offsets = tuple(p[1] for p in ded)
    max_abs = max(max(abs(a[0]), abs(a[1])) for a in normals)
    inserts = []
    present = set(normals)
    for cardinal in _CARDINALS:
        if cardinal in present:
            continue
        ck = angle_key(cardinal)
        pos = 0
        while pos < len(akeys) and akeys[pos] < ck:
            pos += 1
        inserts.append((pos, cardinal))
    return Fan2D(normals, akeys, offsets, max_abs, tuple(inserts))


def intersect_fan(fan: Fan2D, offsets: Sequence[Fraction]) -> Polygon2D | None:
    """Intersect the fan's halfplanes with the given offsets; None when empty."""
    big = max(abs(b) for b in offsets) if offsets else Fraction(0)
    m_bound = 2 * big * fan.max_abs_normal + 1
    items: list[tuple[Normal, Fraction, int]] = [
        (a, b, i) for i, (a, b) in enumerate(zip(fan.normals, offsets))
    ]
    for pos, cardinal in reversed(fan.cardinal_inserts):
        items.insert(pos, (cardinal, Fraction(m_bound), -1))
    active = _run_deque(items)
    if active is None:
        return None
    for item in active:
        if item[2] == -1:
            raise KernelInvariantError("synthetic bounding-box facet stayed active")
    planes = tuple((it[0], it[1]) for it in active)
    akeys = tuple(fan.akeys[it[2]] for it in active)
    n = len(planes)
    corners = tuple(_line_intersection(planes[i], planes[(i + 1) % n]) for i in range(n))
    return Polygon2D(planes, akeys, corners)


def intersect_halfplanes(raw_planes: Iterable[tuple[Sequence, object]]) -> Polygon2D | None:
    """Exact intersection of arbitrary halfplanes a . x <= b in the plane.

    Returns None when the intersection is empty; raises UnboundedBodyError
    when the normals do not positively span (region unbounded if nonempty).
    """
    fan = build_fan(raw_planes)
    return intersect_fan(fan, fan.base_offsets)


def cross3(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points: Iterable[Sequence]) -> list[Point]:
    """Monotone-chain hull, CCW, collinear points dropped; degenerate-safe.

    Returns 1 point for a single point, 2 endpoints for a collinear set.
    """
    pts = sorted({(rat(p[0]), rat(p[1])) for p in points})
    if not pts:
        raise InputError("hull of empty point set")
    if len(pts) == 1:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross3(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross3(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return [pts[0], pts[-1]]
    return hull


def facets_of_hull_2d(hull: Sequence[Point]) -> tuple[Plane, ...]:
    """Canonical facet list for a hull cycle, including degenerate cases.

    A point is boxed by its four axis-aligned supporting halfplanes and a
    segment by its two edge lines and two end lines, so every 2D body has a
    deterministic halfspace form even without full dimension.
    """
    n = len(hull)
    planes: list[Plane] = []
    if n == 1:
        (x, y) = hull[0]
        planes = [normalize_plane((1, 0), x), normalize_plane((-1, 0), -x),
                  normalize_plane((0, 1), y), normalize_plane((0, -1), -y)]
    elif n == 2:
        p, q = hull
        d = (q[0] - p[0], q[1] - p[1])
        side = (d[1], -d[0])
        planes = [normalize_plane(side, side[0] * p[0] + side[1] * p[1]),
                  normalize_plane((-side[0], -side[1]), -(side[0] * p[0] + side[1] * p[1])),
                  normalize_plane(d, d[0] * q[0] + d[1] * q[1]),
                  normalize_plane((-d[0], -d[1]), -(d[0] * p[0] + d[1] * p[1]))]
    else:
        for i in range(n):
            p = hull[i]
            q = hull[(i + 1) % n]
            d = (q[0] - p[0], q[1] - p[1])
            normal = (d[1], -d[0])
            planes.append(normalize_plane(normal, normal[0] * p[0] + normal[1] * p[1]))
    return tuple(sorted(planes))
