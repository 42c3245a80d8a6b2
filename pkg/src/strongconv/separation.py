"""Separation of point sets from a compactum by a body translate.

The engine behind every verifier here is one exact equivalence: a translate
body - t contains S iff t lies in body (-) S, and body - t meets the
compactum C iff t lies in body (+) (-C).  A separating translate therefore
exists iff the eroded polygon P = body (-) S is nonempty and not contained in
the forbidden region Q = body (+) (-C); the witness is a vertex of P that
strictly violates a facet of Q.  All comparisons are exact, so "disjoint"
really means disjoint.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .bodies import ConvexBody, erode, minkowski_sum, strongly_convex_hull
from .errors import (DimensionMismatchError, InputError, NotCoverableError,
                     PreconditionError, SizeCapError)
from .numeric import OPTIMAL, dot, lp_feasible_point, lp_optimize, rat, rat_str, vec
from .polygons import intersect_fan, supports_on_sorted_dirs

Point = tuple[Fraction, ...]

DEFAULT_TRANSVERSAL_CAP = 10 ** 6
DEFAULT_SUBSET_CAP = 10 ** 6


@dataclass(frozen=True)
class ColoredPointSet:
    """Finite rational points, each carrying a color index 0..n_colors-1.

    Every color class must be nonempty; the same coordinates may appear under
    several colors and count as distinct members.
    """

    dim: int
    points: tuple[tuple[Point, int], ...]
    n_colors: int

    def __post_init__(self):
        seen = set()
        for p, c in self.points:
            if len(p) != self.dim:
                raise DimensionMismatchError("colored point dimension mismatch")
            if not 0 <= c < self.n_colors:
                raise InputError(f"color index {c} out of range")
            seen.add(c)
        if seen != set(range(self.n_colors)):
            missing = sorted(set(range(self.n_colors)) - seen)
            raise InputError(f"empty color classes: {missing}")

    @classmethod
    def build(cls, dim: int, labeled_points: Iterable[tuple[Sequence, int]], n_colors: int) -> "ColoredPointSet":
        pts = tuple((vec(p), int(c)) for p, c in labeled_points)
        return cls(dim, pts, n_colors)

    def class_points(self, color: int) -> tuple[Point, ...]:
        return tuple(p for p, c in self.points if c == color)

    def classes(self) -> list[tuple[Point, ...]]:
        return [self.class_points(i) for i in range(self.n_colors)]

    def to_json_dict(self) -> dict:
        return {"dim": self.dim, "colors": self.n_colors,
                "points": [{"x": [rat_str(x) for x in p], "color": c} for p, c in self.points]}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "ColoredPointSet":
        return cls.build(int(doc["dim"]),
                         [(pt["x"], pt["color"]) for pt in doc["points"]],
                         int(doc["colors"]))


@dataclass(frozen=True)
class SeparationWitness:
    """Translate t plus the facet of the forbidden region it strictly violates.

    Certifies S is contained in body - t exactly while a . t > b rules out any
    common point with the compactum.
    """

    t: Point
    violated_facet: tuple[tuple, Fraction]

    def to_json_dict(self) -> dict:
        a, b = self.violated_facet
        return {"t": [rat_str(x) for x in self.t],
                "violated_facet": {"a": [rat_str(x) for x in a], "b": rat_str(b)}}


@dataclass(frozen=True)
class ColorfulReport:
    hypothesis_holds: bool
    transversals_checked: int
    violating_transversal: tuple[tuple[Point, int], ...] | None = None
    separated_color: int | None = None
    separated_pair: tuple[int, int] | None = None
    witness: SeparationWitness | None = None
    nonstandard_colors: bool = False

    @property
    def conclusion_found(self) -> bool:
        return self.separated_color is not None or self.separated_pair is not None

    def to_json_dict(self) -> dict:
        doc: dict = {"hypothesis_holds": self.hypothesis_holds,
                     "transversals_checked": self.transversals_checked,
                     "nonstandard_colors": self.nonstandard_colors}
        if self.violating_transversal is not None:
            doc["violating_transversal"] = [
                {"x": [rat_str(x) for x in p], "color": c} for p, c in self.violating_transversal]
        if self.separated_color is not None:
            doc["separated_color"] = self.separated_color
        if self.separated_pair is not None:
            doc["separated_pair"] = list(self.separated_pair)
        if self.witness is not None:
            doc["witness"] = self.witness.to_json_dict()
        return doc


class SeparationContext:
    """Precomputed state for many separation queries against one (body, C).

    In the plane the eroded region body (-) S reuses the body's facet fan, and
    containment in the forbidden region is decided by one merge walk over both
    angular fans, so a query costs O(#facets) exact operations.
    """

    def __init__(self, body: ConvexBody, compactum=None):
        self.body = body
        self.dim = body.dim
        forbidden = _forbidden_region(body, compactum)
        if body.dim == 2:
            self.fan = body.fan()
            qpoly = forbidden.polygon()
            self.qplanes = qpoly.planes
            self.qoffsets = tuple(b for _, b in qpoly.planes)
            self.qdirs = tuple((k, a) for k, (a, _) in zip(qpoly.akeys, qpoly.planes))
            self.qcanon = tuple(sorted(range(len(self.qplanes)), key=lambda i: self.qplanes[i]))
        else:
            self.body_facets = body.facets
            self.qfacets = tuple(sorted(forbidden.facets))

    def _eroded(self, points: Sequence[Point]):
        if self.dim == 2:
            offsets = tuple(
                b - max(a[0] * p[0] + a[1] * p[1] for p in points)
                for a, b in zip(self.fan.normals, self.fan.base_offsets))
            return intersect_fan(self.fan, offsets)
        return [(a, b - max(dot(a, p) for p in points)) for a, b in self.body_facets]

    def separable(self, points: Sequence[Point]) -> bool:
        """Fast boolean: does some translate contain the points and miss C?"""
        if self.dim == 2:
            poly = self._eroded(points)
            if poly is None:
                return False
            sups = supports_on_sorted_dirs(poly, self.qdirs)
            return any(v > b for (v, _), b in zip(sups, self.qoffsets))
        return self.witness(points) is not None

    def witness(self, points: Sequence[Point]) -> SeparationWitness | None:
        """Deterministic witness: first violated forbidden facet in canonical order."""
        if self.dim == 2:
            poly = self._eroded(points)
            if poly is None:
                return None
            sups = supports_on_sorted_dirs(poly, self.qdirs)
            for i in self.qcanon:
                v, pt = sups[i]
                if v > self.qoffsets[i]:
                    return SeparationWitness(pt, self.qplanes[i])
            return None
        shifted = self._eroded(points)
        if lp_feasible_point(shifted, self.dim) is None:
            return None
        for a, b in self.qfacets:
            out = lp_optimize(a, shifted)
            assert out.status == OPTIMAL
            if out.optimum > b:
                return SeparationWitness(out.point, (a, b))
        return None


def _forbidden_region(body: ConvexBody, compactum) -> ConvexBody:
    if compactum is None:
        return body
    if isinstance(compactum, ConvexBody):
        if compactum.dim != body.dim:
            raise DimensionMismatchError("compactum dimension mismatch")
        return minkowski_sum(body, compactum.negate())
    c = vec(compactum)
    if len(c) != body.dim:
        raise DimensionMismatchError("compactum dimension mismatch")
    return body.translate(tuple(-x for x in c))


def separate(body: ConvexBody, points: Iterable[Sequence], compactum=None) -> SeparationWitness | None:
    """Find a translate of the body containing the points and disjoint from C.

    compactum may be a ConvexBody, a single point, or None for the origin.
    Returns None exactly when no separating translate exists.
    """
    pts = [vec(p) for p in points]
    if not pts:
        raise InputError("cannot separate an empty point set")
    if any(len(p) != body.dim for p in pts):
        raise DimensionMismatchError("point dimension mismatch")
    return SeparationContext(body, compactum).witness(pts)


def _check_color_count(body: ConvexBody, colored: ColoredPointSet, allow_nonstandard: bool) -> bool:
    nonstandard = colored.n_colors != body.dim + 1
    if nonstandard and not allow_nonstandard:
        raise PreconditionError(
            f"expected dim+1 = {body.dim + 1} colors, got {colored.n_colors} "
            "(pass allow_nonstandard=True to explore)")
    return nonstandard


def _transversal_budget(classes, cap) -> int:
    total = 1
    for cls in classes:
        total *= len(cls)
        if total > cap:
            raise SizeCapError(f"transversal count exceeds cap {cap}")
    return total


def _hypothesis_scan(ctx: SeparationContext, colored: ColoredPointSet):
    """Check every transversal for separability; return (ok, count, violator)."""
    classes = colored.classes()
    checked = 0
    for combo in itertools.product(*classes):
        checked += 1
        if not ctx.separable(combo):
            violator = tuple((p, c) for c, p in enumerate(combo))
            return False, checked, violator
    return True, checked, None


def verify_colorful(body: ConvexBody, colored: ColoredPointSet, *,
                    cap: int = DEFAULT_TRANSVERSAL_CAP,
                    allow_nonstandard: bool = False) -> ColorfulReport:
    """Exhaustively check the colorful separation statement against the origin.

    If some transversal cannot be separated from the origin the hypothesis
    fails and that transversal is reported.  Otherwise the color classes are
    scanned in increasing index and the first fully separable class is
    returned with its witness; for a generating body one must exist.
    """
    nonstandard = _check_color_count(body, colored, allow_nonstandard)
    _transversal_budget(colored.classes(), cap)
    ctx = SeparationContext(body, None)
    ok, checked, violator = _hypothesis_scan(ctx, colored)
    if not ok:
        return ColorfulReport(False, checked, violating_transversal=violator,
                              nonstandard_colors=nonstandard)
    for i in range(colored.n_colors):
        w = ctx.witness(colored.class_points(i))
        if w is not None:
            return ColorfulReport(True, checked, separated_color=i, witness=w,
                                  nonstandard_colors=nonstandard)
    return ColorfulReport(True, checked, nonstandard_colors=nonstandard)


def verify_colorful_compactum(body: ConvexBody, colored: ColoredPointSet, compactum: ConvexBody, *,
                              cap: int = DEFAULT_TRANSVERSAL_CAP,
                              allow_nonstandard: bool = False) -> ColorfulReport:
    """As verify_colorful, with an arbitrary convex compactum replacing the origin."""
    nonstandard = _check_color_count(body, colored, allow_nonstandard)
    _transversal_budget(colored.classes(), cap)
    ctx = SeparationContext(body, compactum)
    ok, checked, violator = _hypothesis_scan(ctx, colored)
    if not ok:
        return ColorfulReport(False, checked, violating_transversal=violator,
                              nonstandard_colors=nonstandard)
    for i in range(colored.n_colors):
        w = ctx.witness(colored.class_points(i))
        if w is not None:
            return ColorfulReport(True, checked, separated_color=i, witness=w,
                                  nonstandard_colors=nonstandard)
    return ColorfulReport(True, checked, nonstandard_colors=nonstandard)


def verify_very_colorful(body: ConvexBody, colored: ColoredPointSet, *,
                         cap: int = DEFAULT_TRANSVERSAL_CAP,
                         allow_nonstandard: bool = False) -> ColorfulReport:
    """Two-class variant: under the interiority precondition, some union
    X_i u X_j of two color classes is separable from the origin.

    Requires the origin and every point strictly inside the body; violations
    raise PreconditionError naming the offending point.
    """
    nonstandard = _check_color_count(body, colored, allow_nonstandard)
    origin = (Fraction(0),) * body.dim
    if not body.contains(origin, strict=True):
        raise PreconditionError("origin is not in the interior of the body")
    for p, c in colored.points:
        if not body.contains(p, strict=True):
            coords = ", ".join(rat_str(x) for x in p)
            raise PreconditionError(f"point ({coords}) of color {c} is not in the interior of the body")
    _transversal_budget(colored.classes(), cap)
    ctx = SeparationContext(body, None)
    ok, checked, violator = _hypothesis_scan(ctx, colored)
    if not ok:
        return ColorfulReport(False, checked, violating_transversal=violator,
                              nonstandard_colors=nonstandard)
    for i, j in itertools.combinations(range(colored.n_colors), 2):
        w = ctx.witness(colored.class_points(i) + colored.class_points(j))
        if w is not None:
            return ColorfulReport(True, checked, separated_pair=(i, j), witness=w,
                                  nonstandard_colors=nonstandard)
    return ColorfulReport(True, checked, nonstandard_colors=nonstandard)


def hull_contains(body: ConvexBody, points: Sequence[Sequence], query: Sequence) -> bool:
    """Does the strongly convex hull of the points contain the query point?

    Returns False (not an error) when the points fit in no translate of the
    body, since then the hull over that subset does not exist.
    """
    pts = [vec(p) for p in points]
    q = vec(query)
    if body.dim == 2:
        fan = body.fan()
        offsets = tuple(b - max(a[0] * p[0] + a[1] * p[1] for p in pts)
                        for a, b in zip(fan.normals, fan.base_offsets))
        inner = intersect_fan(fan, offsets)
        if inner is None:
            return False
        dirs = tuple((k, a) for k, a in zip(fan.akeys, fan.normals))
        sups = supports_on_sorted_dirs(inner, dirs)
        return all(v <= b - dot(a, q)
                   for (v, _), (a, b) in zip(sups, zip(fan.normals, fan.base_offsets)))
    try:
        hull = strongly_convex_hull(body, pts)
    except NotCoverableError:
        return False
    return hull.contains(q)


def caratheodory_number(body: ConvexBody, points: Sequence[Sequence], query: Sequence, *,
                        subset_cap: int = DEFAULT_SUBSET_CAP) -> tuple[int, ...] | None:
    """Minimum-cardinality subset whose strongly convex hull contains the query.

    Requires the full set to fit in a translate of the body.  Returns None if
    even the full hull misses the query; otherwise searches subset sizes
    breadth-first, lexicographic on sorted index tuples, and returns the first
    hit.  Raises SizeCapError beyond subset_cap enumerated subsets.
    """
    pts = [vec(p) for p in points]
    if not pts:
        raise InputError("empty point set")
    if erode(body, pts) is None:
        pts_str = ", ".join("(" + ", ".join(rat_str(x) for x in p) + ")" for p in pts)
        raise NotCoverableError(f"point set not contained in any translate of the body: {pts_str}")
    if not hull_contains(body, pts, query):
        return None
    enumerated = 0
    for size in range(1, len(pts) + 1):
        for idxs in itertools.combinations(range(len(pts)), size):
            enumerated += 1
            if enumerated > subset_cap:
                raise SizeCapError(f"subset enumeration exceeds cap {subset_cap}")
            if hull_contains(body, [pts[i] for i in idxs], query):
                return idxs
    raise AssertionError("full set contains the query but no subset was found")


# -- seeded instance generators ---------------------------------------------


def random_rational(rng: random.Random, lo, hi, den: int = 16) -> Fraction:
    lo_f, hi_f = rat(lo), rat(hi)
    a = -(-lo_f.numerator * den // lo_f.denominator)  # ceil(lo * den)
    b = hi_f.numerator * den // hi_f.denominator      # floor(hi * den)
    if a > b:
        raise InputError("empty rational sampling range")
    return Fraction(rng.randint(a, b), den)


def random_point(rng: random.Random, center: Sequence, half_width, den: int = 16) -> Point:
    c = vec(center)
    h = rat(half_width)
    return tuple(x + random_rational(rng, -h, h, den) for x in c)


def random_convex_polygon(rng: random.Random, *, points: int = 8, radius=2,
                          center=(0, 0), den: int = 16) -> ConvexBody:
    """Full-dimensional random polygon: hull of points sampled in a square."""
    r = rat(radius)
    while True:
        cloud = [random_point(rng, center, r, den) for _ in range(max(3, points))]
        try:
            body = ConvexBody.from_vertices(cloud)
        except InputError:
            continue
        if body.is_full_dimensional():
            return body


def random_colored_instance(rng: random.Random, body: ConvexBody, *,
                            n_colors: int = 3, max_per_class: int = 4,
                            compactum: ConvexBody | None = None,
                            interior_only: bool = False,
                            spread=None, distance=None,
                            max_attempts: int = 2000) -> ColoredPointSet:
    """Rejection-sample a colored instance satisfying the separation hypothesis.

    Points cluster around a random direction at a moderate distance from the
    origin so that transversals are usually separable but the instance is not
    trivially one-translate-coverable.  Raises PreconditionError when no
    hypothesis-satisfying instance is found within max_attempts.
    """
    scale = max(max(abs(x) for x in v) for v in body.vertices)
    if distance is None:
        distance = (Fraction(1, 2) * scale, Fraction(6, 5) * scale)
    if spread is None:
        spread = Fraction(2, 5) * scale
    for _ in range(max_attempts):
        u = _random_unit_direction(rng)
        rho = random_rational(rng, distance[0], distance[1], 32)
        if interior_only:
            rho = random_rational(rng, Fraction(1, 5) * scale, Fraction(3, 5) * scale, 32)
        base = tuple(rho * x for x in u)
        labeled = []
        for c in range(n_colors):
            cls_spread = spread if not interior_only else Fraction(1, 5) * scale
            for _ in range(rng.randint(1, max_per_class)):
                labeled.append((random_point(rng, base, cls_spread, 32), c))
        colored = ColoredPointSet.build(body.dim, labeled, n_colors)
        if interior_only:
            if not all(body.contains(p, strict=True) for p, _ in colored.points):
                continue
        ctx = SeparationContext(body, compactum)
        ok = True
        for combo in itertools.product(*colored.classes()):
            if not ctx.separable(combo):
                ok = False
                break
        if ok:
            return colored
    raise PreconditionError("could not sample a hypothesis-satisfying instance")


def _random_unit_direction(rng: random.Random) -> Point:
    """Rational point exactly on the unit circle via the half-angle trick."""
    t = Fraction(rng.randint(-64, 64), 16)
    den = 1 + t * t
    u = ((1 - t * t) / den, 2 * t / den)
    if rng.randint(0, 1):
        u = (-u[0], -u[1])
    return u
