"""Convex bodies over exact rationals and their Minkowski calculus.

A body carries a canonical halfspace list and (for dimension <= 3) an exact
vertex list.  The calculus implemented here is the one the separation and
hull machinery is built on: support values, Minkowski sums, erosion
K (-) T = intersection of translates K - t, strongly convex hulls
K (-) (K (-) X), and the summand criterion M (+) (K (-) M) = K.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (DimensionMismatchError, EmptyBodyError, InputError,
                     NotCoverableError, UnboundedBodyError)
from .numeric import OPTIMAL, dot, lp_feasible_point, lp_optimize, matrix_rank, rat, rat_str, vec
from .polygons import (Fan2D, Polygon2D, build_fan, convex_hull_2d, facets_of_hull_2d,
                       intersect_fan, normalize_plane)

Point = tuple[Fraction, ...]
Plane = tuple[tuple, Fraction]

EQUAL = "equal"
A_SUBSET_B = "A_subset_B"
B_SUBSET_A = "B_subset_A"
INCOMPARABLE = "incomparable"


def _normalize_plane_nd(a: Sequence, b) -> Plane:
    av = vec(a)
    bb = rat(b)
    if all(x == 0 for x in av):
        raise InputError("halfspace with zero normal")
    den = 1
    for x in av:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in av]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    return (tuple(v // g for v in ints), bb * den / g)


def affine_rank(points: Sequence[Point]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = [[x - y for x, y in zip(p, base)] for p in points[1:]]
    return matrix_rank(rows)


class ConvexBody:
    """Bounded nonempty convex body with canonical exact representations.

    Immutable after construction; derived data (vertex lists, facet fans) is
    cached write-once, so instances are safe to share across threads.
    """

    __slots__ = ("dim", "_facets", "_vertices", "_cycle", "_poly", "_fan", "_ball")

    def __init__(self, *_args, **_kwargs):
        raise TypeError("use ConvexBody.from_halfspaces / from_vertices / ball_approx")

    @classmethod
    def _make(cls, dim, facets, vertices=None, cycle=None, poly=None, ball=None):
        self = object.__new__(cls)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_facets", tuple(facets))
        object.__setattr__(self, "_vertices", tuple(vertices) if vertices is not None else None)
        object.__setattr__(self, "_cycle", tuple(cycle) if cycle is not None else None)
        object.__setattr__(self, "_poly", poly)
        object.__setattr__(self, "_fan", None)
        object.__setattr__(self, "_ball", ball)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("ConvexBody is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_halfspaces(cls, halfspaces: Sequence[tuple[Sequence, object]], dim: int | None = None) -> "ConvexBody":
        """Body from a . x <= b constraints; must be bounded and nonempty."""
        if not halfspaces:
            raise InputError("empty halfspace list")
        d = dim if dim is not None else len(halfspaces[0][0])
        for a, _ in halfspaces:
            if len(a) != d:
                raise DimensionMismatchError("halfspace dimension mismatch")
        if d == 1:
            return cls._from_halfspaces_1d(halfspaces)
        if d == 2:
            poly = intersect_fan_of(halfspaces)
            if poly is None:
                raise EmptyBodyError("halfspace body is empty")
            return cls._from_poly(poly)
        return cls._from_halfspaces_nd(halfspaces, d)

    @classmethod
    def _from_halfspaces_1d(cls, halfspaces) -> "ConvexBody":
        lo = hi = None
        for a, b in halfspaces:
            av, bb = rat(a[0]), rat(b)
            if av > 0:
                v = bb / av
                hi = v if hi is None or v < hi else hi
            elif av < 0:
                v = bb / av
                lo = v if lo is None or v > lo else lo
            else:
                raise InputError("halfspace with zero normal")
        if lo is None or hi is None:
            raise UnboundedBodyError("interval is unbounded")
        if lo > hi:
            raise EmptyBodyError("interval is empty")
        facets = tuple(sorted([((-1,), -lo), ((1,), hi)]))
        verts = [(lo,)] if lo == hi else [(lo,), (hi,)]
        return cls._make(1, facets, verts, verts)

    @classmethod
    def _from_poly(cls, poly: Polygon2D, ball=None) -> "ConvexBody":
        cycle = poly.vertex_cycle()
        vertices = tuple(sorted(set(cycle)))
        if poly.is_full_dim():
            facets = tuple(sorted(poly.minimal_facets()))
        else:
            facets = facets_of_hull_2d(convex_hull_2d(vertices))
        return cls._make(2, facets, vertices, cycle, poly, ball)

    @classmethod
    def _from_halfspaces_nd(cls, halfspaces, d) -> "ConvexBody":
        planes = _dedupe_nd([_normalize_plane_nd(a, b) for a, b in halfspaces])
        if lp_feasible_point(planes, d) is None:
            raise EmptyBodyError("halfspace body is empty")
        for i in range(d):
            for sign in (1, -1):
                c = [0] * d
                c[i] = sign
                if lp_optimize(c, planes).status != OPTIMAL:
                    raise UnboundedBodyError(f"body unbounded along coordinate {i}")
        kept = _remove_redundant_lp(planes)
        return cls._make(d, tuple(sorted(kept)))

    @classmethod
    def from_vertices(cls, points: Sequence[Sequence]) -> "ConvexBody":
        pts = [vec(p) for p in points]
        if not pts:
            raise InputError("empty vertex list")
        d = len(pts[0])
        if any(len(p) != d for p in pts):
            raise DimensionMismatchError("vertex dimension mismatch")
        if d == 1:
            lo = min(p[0] for p in pts)
            hi = max(p[0] for p in pts)
            return cls._from_halfspaces_1d([((1,), hi), ((-1,), -lo)])
        if d == 2:
            hull = convex_hull_2d(pts)
            facets = facets_of_hull_2d(hull)
            return cls._make(2, facets, tuple(sorted(set(hull))), hull)
        if d == 3:
            return cls._from_vertices_3d(pts)
        raise InputError("vertex form is supported for dimension <= 3 only")

    @classmethod
    def _from_vertices_3d(cls, pts) -> "ConvexBody":
        uniq = sorted(set(pts))
        if affine_rank(uniq) < 3:
            raise InputError("degenerate 3D vertex input (affinely dependent) is unsupported")
        facets = set()
        for p1, p2, p3 in itertools.combinations(uniq, 3):
            u = tuple(a - b for a, b in zip(p2, p1))
            v = tuple(a - b for a, b in zip(p3, p1))
            n = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
            if n == (0, 0, 0):
                continue
            b = dot(n, p1)
            vals = [dot(n, q) for q in uniq]
            if all(x <= b for x in vals):
                facets.add(_normalize_plane_nd(n, b))
            if all(x >= b for x in vals):
                facets.add(_normalize_plane_nd(tuple(-x for x in n), -b))
        facets = tuple(sorted(facets))
        verts = tuple(q for q in uniq
                      if sum(1 for a, b in facets if dot(a, q) == b) >= 3)
        return cls._make(3, facets, verts)

    @classmethod
    def box(cls, lows: Sequence, highs: Sequence) -> "ConvexBody":
        lo, hi = vec(lows), vec(highs)
        if len(lo) != len(hi):
            raise DimensionMismatchError("box bounds length mismatch")
        d = len(lo)
        hs = []
        for i in range(d):
            e = [0] * d
            e[i] = 1
            hs.append((tuple(e), hi[i]))
            e2 = [0] * d
            e2[i] = -1
            hs.append((tuple(e2), -lo[i]))
        return cls.from_halfspaces(hs, dim=d)

    @classmethod
    def ball_approx(cls, center: Sequence, radius, sides: int = 64) -> "ConvexBody":
        """Inscribed near-regular polygon with vertices exactly on the circle.

        Rational points on the circle come from the tangent half-angle
        parametrization, so every vertex satisfies |v - c| = r exactly; the
        angular spacing is uniform only up to the rational rounding of t.
        """
        c = vec(center)
        r = rat(radius)
        if len(c) != 2:
            raise InputError("ball approximation is supported in dimension 2 only")
        if r <= 0 or sides < 3:
            raise InputError("ball approximation needs radius > 0 and sides >= 3")
        pts = []
        for i in range(sides):
            if i == 0:
                u = (Fraction(1), Fraction(0))
            elif 2 * i == sides:
                u = (Fraction(-1), Fraction(0))
            else:
                t = Fraction(math.tan(math.pi * i / sides)).limit_denominator(10 ** 9)
                den = 1 + t * t
                u = ((1 - t * t) / den, 2 * t / den)
            pts.append((c[0] + r * u[0], c[1] + r * u[1]))
        body = cls.from_vertices(pts)
        object.__setattr__(body, "_ball", {"center": c, "radius": r, "sides": sides})
        return body

    # -- representations ---------------------------------------------------

    @property
    def facets(self) -> tuple[Plane, ...]:
        return self._facets

    @property
    def vertices(self) -> tuple[Point, ...]:
        if self._vertices is None:
            if self.dim == 3:
                object.__setattr__(self, "_vertices", _vertices_from_facets_3d(self._facets))
            else:
                raise InputError(f"vertex enumeration unsupported in dimension {self.dim}")
        return self._vertices

    def vertex_cycle(self) -> tuple[Point, ...]:
        """Boundary vertices in CCW order (dimension 2 only)."""
        if self.dim != 2:
            raise InputError("vertex cycle is a 2D notion")
        return self._cycle

    def polygon(self) -> Polygon2D:
        if self.dim != 2:
            raise InputError("polygon form is 2D only")
        if self._poly is None:
            poly = intersect_fan_of(self._facets)
            assert poly is not None
            object.__setattr__(self, "_poly", poly)
        return self._poly

    def fan(self) -> Fan2D:
        if self.dim != 2:
            raise InputError("facet fan is 2D only")
        if self._fan is None:
            object.__setattr__(self, "_fan", build_fan(self._facets))
        return self._fan

    @property
    def ball_meta(self):
        return self._ball

    def is_full_dimensional(self) -> bool:
        if self.dim == 1:
            return len(self._vertices) == 2
        if self.dim == 2:
            return self.polygon().is_full_dim()
        return affine_rank(list(self.vertices)) == self.dim

    # -- predicates --------------------------------------------------------

    def support(self, direction: Sequence) -> Fraction:
        return self.support_point(direction)[0]

    def support_point(self, direction: Sequence) -> tuple[Fraction, Point]:
        """Exact support value with a deterministic (lex-min) maximizer."""
        u = vec(direction)
        if len(u) != self.dim:
            raise DimensionMismatchError("direction dimension mismatch")
        if self._vertices is not None or self.dim <= 3:
            best = None
            best_p = None
            for p in self.vertices:
                v = dot(u, p)
                if best is None or v > best or (v == best and p < best_p):
                    best, best_p = v, p
            return best, best_p
        out = lp_optimize(u, self._facets)
        assert out.status == OPTIMAL
        return out.optimum, out.point

    def contains(self, point: Sequence, strict: bool = False) -> bool:
        p = vec(point)
        if len(p) != self.dim:
            raise DimensionMismatchError("point dimension mismatch")
        if strict:
            return all(dot(a, p) < b for a, b in self._facets)
        return all(dot(a, p) <= b for a, b in self._facets)

    def bounding_box(self) -> tuple[Point, Point]:
        vs = self.vertices
        lo = tuple(min(v[i] for v in vs) for i in range(self.dim))
        hi = tuple(max(v[i] for v in vs) for i in range(self.dim))
        return lo, hi

    # -- transforms --------------------------------------------------------

    def translate(self, t: Sequence) -> "ConvexBody":
        tv = vec(t)
        if len(tv) != self.dim:
            raise DimensionMismatchError("translate dimension mismatch")
        facets = tuple((a, b + dot(a, tv)) for a, b in self._facets)
        verts = tuple(tuple(x + y for x, y in zip(p, tv)) for p in self._vertices) if self._vertices else None
        cyc = tuple(tuple(x + y for x, y in zip(p, tv)) for p in self._cycle) if self._cycle else None
        return ConvexBody._make(self.dim, sorted(facets), sorted(verts) if verts else None, cyc)

    def negate(self) -> "ConvexBody":
        """Pointwise reflection -K through the origin."""
        facets = tuple(sorted((tuple(-x for x in a), b) for a, b in self._facets))
        verts = tuple(sorted(tuple(-x for x in p) for p in self._vertices)) if self._vertices else None
        cyc = tuple(tuple(-x for x in p) for p in self._cycle) if self._cycle else None
        return ConvexBody._make(self.dim, facets, verts, cyc)

    # -- identity ----------------------------------------------------------

    def canonical_key(self):
        if self.dim <= 3:
            return (self.dim, self.vertices)
        return (self.dim, self._facets)

    def __eq__(self, other):
        if not isinstance(other, ConvexBody):
            return NotImplemented
        return self.canonical_key() == other.canonical_key()

    def __hash__(self):
        return hash(self.canonical_key())

    def __repr__(self):
        return f"ConvexBody(dim={self.dim}, facets={len(self._facets)})"

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        if self._ball is not None:
            return {"dim": 2,
                    "ball": {"center": [rat_str(x) for x in self._ball["center"]],
                             "radius": rat_str(self._ball["radius"]),
                             "sides": self._ball["sides"]}}
        return {"dim": self.dim,
                "halfspaces": [{"a": [rat_str(x) for x in a], "b": rat_str(b)}
                               for a, b in self._facets]}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "ConvexBody":
        if "ball" in doc:
            ball = doc["ball"]
            return cls.ball_approx(ball["center"], ball["radius"], int(ball.get("sides", 64)))
        if "halfspaces" in doc:
            hs = [(tuple(h["a"]), h["b"]) for h in doc["halfspaces"]]
            return cls.from_halfspaces([(vec(a), rat(b)) for a, b in hs], dim=doc.get("dim"))
        if "vertices" in doc:
            return cls.from_vertices(doc["vertices"])
        raise InputError("body document needs 'halfspaces', 'vertices' or 'ball'")


def intersect_fan_of(halfspaces) -> Polygon2D | None:
    fan = build_fan((a, rat(b)) for a, b in halfspaces)
    return intersect_fan(fan, fan.base_offsets)


def _dedupe_nd(planes: list[Plane]) -> list[Plane]:
    best: dict[tuple, Fraction] = {}
    for a, b in planes:
        if a not in best or b < best[a]:
            best[a] = b
    return [(a, b) for a, b in best.items()]


def _remove_redundant_lp(planes: list[Plane]) -> list[Plane]:
    kept = list(planes)
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1:]
        if not others:
            break
        a, b = kept[i]
        out = lp_optimize(a, others)
        if out.status == OPTIMAL and out.optimum <= b:
            kept.pop(i)
        else:
            i += 1
    return kept


def _vertices_from_facets_3d(facets: Sequence[Plane]) -> tuple[Point, ...]:
    pts = set()
    fl = list(facets)
    for (a1, b1), (a2, b2), (a3, b3) in itertools.combinations(fl, 3):
        det = (a1[0] * (a2[1] * a3[2] - a2[2] * a3[1])
               - a1[1] * (a2[0] * a3[2] - a2[2] * a3[0])
               + a1[2] * (a2[0] * a3[1] - a2[1] * a3[0]))
        if det == 0:
            continue
        bx = (b1 * (a2[1] * a3[2] - a2[2] * a3[1])
              - a1[1] * (b2 * a3[2] - a2[2] * b3)
              + a1[2] * (b2 * a3[1] - a2[1] * b3))
        by = (a1[0] * (b2 * a3[2] - a2[2] * b3)
              - b1 * (a2[0] * a3[2] - a2[2] * a3[0])
              + a1[2] * (a2[0] * b3 - b2 * a3[0]))
        bz = (a1[0] * (a2[1] * b3 - b2 * a3[1])
              - a1[1] * (a2[0] * b3 - b2 * a3[0])
              + b1 * (a2[0] * a3[1] - a2[1] * a3[0]))
        p = (Fraction(bx, det), Fraction(by, det), Fraction(bz, det))
        if all(dot(a, p) <= b for a, b in fl):
            pts.add(p)
    return tuple(sorted(pts))


# -- operations ------------------------------------------------------------


def support_value(body: ConvexBody, direction: Sequence) -> Fraction:
    """Exact supremum of direction . x over the body."""
    return body.support(direction)


def minkowski_sum(a: ConvexBody, b: ConvexBody) -> ConvexBody:
    """Exact Minkowski sum; vertex form is the hull of pairwise vertex sums."""
    if a.dim != b.dim:
        raise DimensionMismatchError("Minkowski sum of bodies of different dimension")
    if a.dim > 3:
        raise InputError("Minkowski sum supported for dimension <= 3")
    sums = {tuple(x + y for x, y in zip(p, q)) for p in a.vertices for q in b.vertices}
    return ConvexBody.from_vertices(sorted(sums))


def erode(body: ConvexBody, shape) -> ConvexBody | None:
    """Erosion body (-) shape = intersection over t in shape of (body - t).

    shape may be a ConvexBody or a finite iterable of points.  Returns None
    when the erosion is empty; emptiness is a legitimate result, not an error.
    """
    if isinstance(shape, ConvexBody):
        if shape.dim != body.dim:
            raise DimensionMismatchError("erosion dimension mismatch")
        sup = shape.support
    else:
        pts = [vec(p) for p in shape]
        if not pts:
            raise InputError("erosion by an empty point set")
        if any(len(p) != body.dim for p in pts):
            raise DimensionMismatchError("erosion dimension mismatch")

        def sup(a):
            return max(dot(a, p) for p in pts)

    if body.dim == 2:
        fan = body.fan()
        offsets = tuple(b - sup(a) for a, b in zip(fan.normals, fan.base_offsets))
        poly = intersect_fan(fan, offsets)
        if poly is None:
            return None
        return ConvexBody._from_poly(poly)
    shifted = [(a, b - sup(a)) for a, b in body.facets]
    if lp_feasible_point(shifted, body.dim) is None:
        return None
    if body.dim == 1:
        return ConvexBody._from_halfspaces_1d(shifted)
    # dimension >= 3: facets may carry redundancy; predicates stay exact
    return ConvexBody._make(body.dim, tuple(sorted(shifted)))


def strongly_convex_hull(body: ConvexBody, points: Iterable[Sequence]) -> ConvexBody:
    """Minimal intersection of translates of the body containing the points.

    Computed as body (-) (body (-) X).  Raises NotCoverableError when no
    translate of the body contains all of X.
    """
    pts = [vec(p) for p in points]
    inner = erode(body, pts)
    if inner is None:
        pts_str = ", ".join("(" + ", ".join(rat_str(x) for x in p) + ")" for p in pts)
        raise NotCoverableError(f"point set not contained in any translate of the body: {pts_str}")
    hull = erode(body, inner)
    assert hull is not None  # contains X, hence nonempty
    return hull


def body_relation(a: ConvexBody, b: ConvexBody) -> str:
    """Exact containment relation between two bodies of equal dimension."""
    if a.dim != b.dim:
        raise DimensionMismatchError("bodies of different dimension are incomparable")
    a_in_b = all(a.support(n) <= off for n, off in b.facets)
    b_in_a = all(b.support(n) <= off for n, off in a.facets)
    if a_in_b and b_in_a:
        return EQUAL
    if a_in_b:
        return A_SUBSET_B
    if b_in_a:
        return B_SUBSET_A
    return INCOMPARABLE


@dataclass(frozen=True)
class SummandReport:
    """Outcome of the summand criterion M (+) (K (-) M) = K."""

    is_summand: bool
    complement: ConvexBody | None = None
    witness_point: Point | None = None


def is_summand(part: ConvexBody, whole: ConvexBody) -> SummandReport:
    """Exact summand test: part (+) (whole (-) part) = whole.

    Complete because any witness T' with part + T' = whole satisfies
    T' contained in whole (-) part.  On failure the witness point lies in
    whole but outside part (+) (whole (-) part).
    """
    if part.dim != whole.dim:
        raise DimensionMismatchError("summand test dimension mismatch")
    if part.dim > 3:
        raise InputError("summand test supported for dimension <= 3")
    complement = erode(whole, part)
    if complement is None:
        return SummandReport(False, None, min(whole.vertices))
    rebuilt = minkowski_sum(part, complement)
    rel = body_relation(rebuilt, whole)
    assert rel in (EQUAL, A_SUBSET_B)  # part (+) (whole (-) part) is always inside whole
    if rel == EQUAL:
        return SummandReport(True, complement, None)
    for n, off in rebuilt.facets:
        val, point = whole.support_point(n)
        if val > off:
            return SummandReport(False, complement, point)
    raise AssertionError("strict subset must violate some facet of the rebuilt body")


@dataclass(frozen=True)
class GeneratingProbeReport:
    """Sampled two-point test of the generating property.

    A failure certifies the body is NOT generating; all-pass is evidence only,
    since no bound on which pairs must be tested is available.
    """

    all_passed: bool
    failures: tuple[dict, ...]
    pairs_checked: int
    pairs_skipped_empty: int


def generating_probe(body: ConvexBody, pair_samples: Sequence[tuple[Sequence, Sequence]]) -> GeneratingProbeReport:
    """Run the summand criterion on body (-) {t1, t2} for each sampled pair."""
    failures = []
    checked = 0
    skipped = 0
    for t1, t2 in pair_samples:
        eroded = erode(body, [t1, t2])
        if eroded is None:
            skipped += 1
            continue
        checked += 1
        rep = is_summand(eroded, body)
        if not rep.is_summand:
            failures.append({"pair": (vec(t1), vec(t2)), "witness_point": rep.witness_point})
    return GeneratingProbeReport(not failures, tuple(failures), checked, skipped)
