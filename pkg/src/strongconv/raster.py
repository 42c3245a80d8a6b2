"""Rasterized region homology probes.

Regions such as K \\ (K + T) are rasterized on a grid of cells whose centers
are tested for membership with exact rational arithmetic, and the reduced
Betti numbers of the resulting cubical complex are computed from exact
integer counts: Euler characteristic plus union-find components in 2D, plus
one GF(2) boundary rank in 3D (valid because rasterized subcomplexes of
3-space have torsion-free homology).  Results are resolution-dependent by
nature and every report carries the resolution used.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .bodies import ConvexBody, SummandReport, is_summand
from .errors import InputError
from .numeric import dot, rat, vec
from .topology import HomologyProfile

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class RegionOracle:
    """Deterministic membership test over a bounding box.

    fast_rows, when set, returns for a row index the list of cell-index runs
    inside the region; it must agree exactly with contains on cell centers.
    """

    contains: Callable[[Point], bool]
    bbox: tuple[Point, Point]
    tag: str = "region"
    fast_rows: Callable | None = field(default=None, compare=False)


def convex_difference_region(inner: ConvexBody, outer: ConvexBody, *,
                             bbox: tuple[Sequence, Sequence] | None = None,
                             tag: str | None = None) -> RegionOracle:
    """Oracle for inner \\ outer with closed membership on both sides.

    A point belongs to the region when it satisfies every facet of inner and
    strictly violates some facet of outer.  For 2D bodies a per-row interval
    sweep is attached, turning rasterization into O(facets) work per row.
    """
    if inner.dim != outer.dim:
        raise InputError("region bodies must share a dimension")
    if bbox is None:
        lo, hi = inner.bounding_box()
    else:
        lo, hi = vec(bbox[0]), vec(bbox[1])
    in_f, out_f = inner.facets, outer.facets

    def contains(p: Point) -> bool:
        return (all(dot(a, p) <= b for a, b in in_f)
                and any(dot(a, p) > b for a, b in out_f))

    fast = None
    if inner.dim == 2:
        def fast(x0, y_c, step, nx):
            win = _convex_row_interval(in_f, x0, y_c, step, nx)
            if win is None:
                return []
            wout = _convex_row_interval(out_f, x0, y_c, step, nx)
            return _interval_minus(win, wout)

    return RegionOracle(contains, (lo, hi), tag or "difference", fast)


def _convex_row_interval(facets, x0: Fraction, y_c: Fraction, step: Fraction, nx: int):
    """Cells of row with center ordinate y_c whose centers satisfy the facets."""
    lo, hi = 0, nx - 1
    for a, b in facets:
        c = b - a[1] * y_c
        if a[0] == 0:
            if c < 0:
                return None
            continue
        # a0 * (x0 + (i + 1/2) * step) <= c
        bound = (c / a[0] - x0) / step - Fraction(1, 2)
        if a[0] > 0:
            hi = min(hi, math.floor(bound))
        else:
            lo = max(lo, math.ceil(bound))
    if lo > hi:
        return None
    return (lo, hi)


def _interval_minus(keep, drop):
    if drop is None:
        return [keep]
    runs = []
    if keep[0] < drop[0]:
        runs.append((keep[0], min(keep[1], drop[0] - 1)))
    if keep[1] > drop[1]:
        runs.append((max(keep[0], drop[1] + 1), keep[1]))
    return [r for r in runs if r[0] <= r[1]]


def _merged_length(runs_a, runs_b, extend: int = 0) -> int:
    """Total integer length of the union of two run lists, ends extended."""
    items = sorted((r[0], r[1] + extend) for r in itertools.chain(runs_a, runs_b))
    total = 0
    cur = None
    for lo, hi in items:
        if cur is None or lo > cur[1] + 1:
            if cur is not None:
                total += cur[1] - cur[0] + 1
            cur = [lo, hi]
        else:
            cur[1] = max(cur[1], hi)
    if cur is not None:
        total += cur[1] - cur[0] + 1
    return total


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        while p != self.parent[p]:
            self.parent[p] = self.parent[self.parent[p]]
            p = self.parent[p]
        self.parent[x] = p
        return p

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def count(self) -> int:
        return sum(1 for x in self.parent if self.find(x) == x)


def _betti_from_rows(rows: list[list[tuple[int, int]]]) -> HomologyProfile:
    """Reduced Betti numbers of a 2D cubical complex given per-row cell runs.

    Faces, edges and vertices are counted exactly from the run structure;
    connectivity (including corner touching) comes from a union-find over
    runs of adjacent rows dilated by one cell.
    """
    faces = sum(hi - lo + 1 for row in rows for lo, hi in row)
    if faces == 0:
        return HomologyProfile({}, is_empty_complex=True)
    vertical_edges = sum(hi - lo + 2 for row in rows for lo, hi in row)
    horizontal_edges = 0
    vert_count = 0
    nrows = len(rows)
    for j in range(nrows + 1):
        below = rows[j - 1] if j - 1 >= 0 else []
        above = rows[j] if j < nrows else []
        if below or above:
            horizontal_edges += _merged_length(below, above)
            vert_count += _merged_length(below, above, extend=1)
    uf = _UnionFind()
    for j, row in enumerate(rows):
        for run in row:
            uf.find((j, run))
    for j in range(1, nrows):
        for run in rows[j]:
            for other in rows[j - 1]:
                if run[0] <= other[1] + 1 and other[0] <= run[1] + 1:
                    uf.union((j, run), (j - 1, other))
    components = uf.count()
    chi = vert_count - (vertical_edges + horizontal_edges) + faces
    b0 = components
    b1 = components - chi
    return HomologyProfile({-1: 0, 0: b0 - 1, 1: b1})


def _betti_cells_3d(cells: set[tuple[int, int, int]]) -> HomologyProfile:
    if not cells:
        return HomologyProfile({}, is_empty_complex=True)
    verts: set = set()
    edges: set = set()
    squares: set = set()
    for (i, j, k) in cells:
        for di, dj, dk in itertools.product((0, 1), repeat=3):
            verts.add((i + di, j + dj, k + dk))
        for axis in range(3):
            for da, db in itertools.product((0, 1), repeat=2):
                base = [i, j, k]
                off = [0, 0, 0]
                rest = [x for x in range(3) if x != axis]
                off[rest[0]] = da
                off[rest[1]] = db
                edges.add((axis, base[0] + off[0], base[1] + off[1], base[2] + off[2]))
        for axis in range(3):  # squares normal to axis
            for d in (0, 1):
                base = [i, j, k]
                base[axis] += d
                squares.add((axis, tuple(base)))
    uf = _UnionFind()
    for c in cells:
        uf.find(c)
        for d in itertools.product((-1, 0, 1), repeat=3):
            if d == (0, 0, 0):
                continue
            nb = (c[0] + d[0], c[1] + d[1], c[2] + d[2])
            if nb in cells:
                uf.union(c, nb)
    components = uf.count()
    edge_index = {e: n for n, e in enumerate(sorted(edges))}
    # GF(2) rank of the square boundary via bitset elimination
    pivots: dict[int, int] = {}
    rank2 = 0
    for axis, (i, j, k) in squares:
        rest = [x for x in range(3) if x != axis]
        mask = 0
        for r, other in ((rest[0], rest[1]), (rest[1], rest[0])):
            for d in (0, 1):
                base = [i, j, k]
                base[other] += d
                mask |= 1 << edge_index[(r, base[0], base[1], base[2])]
        while mask:
            low = mask & -mask
            piv = pivots.get(low)
            if piv is None:
                pivots[low] = mask
                rank2 += 1
                break
            mask ^= piv
    v, e, f, c = len(verts), len(edges), len(squares), len(cells)
    rank1 = v - components
    b1 = (e - rank1) - rank2
    chi = v - e + f - c
    b2 = chi - components + b1
    return HomologyProfile({-1: 0, 0: components - 1, 1: b1, 2: b2})


def region_betti(oracle: RegionOracle, resolution: int, dimension: int = 2) -> HomologyProfile:
    """Approximate reduced Betti numbers of the rasterized region.

    Closed grid cells whose center lies inside the region form a cubical
    complex; its exact homology is returned.  The answer depends on the
    resolution (cell-center membership is used for determinism), so callers
    should treat it as a probe, not a certificate.
    """
    lo, hi = oracle.bbox
    if dimension not in (2, 3):
        raise InputError("rasterized homology supports dimensions 2 and 3")
    if len(lo) != dimension:
        raise InputError("oracle bounding box does not match the dimension")
    if resolution < 1:
        raise InputError("resolution must be positive")
    steps = [(h - l) / resolution for l, h in zip(lo, hi)]
    if any(s <= 0 for s in steps):
        return HomologyProfile({}, is_empty_complex=True)
    if dimension == 2:
        rows = []
        if oracle.fast_rows is not None:
            for j in range(resolution):
                y_c = lo[1] + (2 * j + 1) * steps[1] / 2
                rows.append(sorted(oracle.fast_rows(lo[0], y_c, steps[0], resolution)))
        else:
            for j in range(resolution):
                y_c = lo[1] + (2 * j + 1) * steps[1] / 2
                row = []
                run_start = None
                for i in range(resolution):
                    x_c = lo[0] + (2 * i + 1) * steps[0] / 2
                    inside = oracle.contains((x_c, y_c))
                    if inside and run_start is None:
                        run_start = i
                    if not inside and run_start is not None:
                        row.append((run_start, i - 1))
                        run_start = None
                if run_start is not None:
                    row.append((run_start, resolution - 1))
                rows.append(row)
        return _betti_from_rows(rows)
    if resolution > 48:
        raise InputError("3D rasterization is capped at resolution 48 per axis")
    cells = set()
    for idx in itertools.product(range(resolution), repeat=3):
        center = tuple(l + (2 * i + 1) * s / 2 for l, i, s in zip(lo, idx, steps))
        if oracle.contains(center):
            cells.add(idx)
    return _betti_cells_3d(cells)


@dataclass(frozen=True)
class GridSpec:
    """Translate grid for the summand probe: counts per axis, optional bounds."""

    counts: tuple[int, int]
    bounds: tuple[Point, Point] | None = None

    @classmethod
    def square(cls, n: int) -> "GridSpec":
        return cls((n, n))


@dataclass(frozen=True)
class SummandProbeReport:
    summand: SummandReport
    slice_profiles: tuple[tuple[Point, str], ...]  # (t, 'empty'|'acyclic'|'other')
    all_acyclic_on_grid: bool
    consistent: bool
    resolution: int

    def to_json_dict(self) -> dict:
        from .numeric import rat_str
        return {"is_summand": self.summand.is_summand,
                "all_grid_slices_empty_or_acyclic": self.all_acyclic_on_grid,
                "consistent_with_guaranteed_direction": self.consistent,
                "resolution": self.resolution,
                "slices": [{"t": [rat_str(x) for x in t], "class": c}
                           for t, c in self.slice_profiles]}


def summand_acyclicity_probe(part: ConvexBody, whole: ConvexBody, grid: GridSpec, *,
                             resolution: int = 100) -> SummandProbeReport:
    """Probe the link between the summand relation and slice acyclicity.

    For each grid translate t the region (part + t) \\ whole is classified as
    empty, acyclic or other by rasterized homology, and the exact summand test
    runs alongside.  When part is a summand every slice must be empty or
    acyclic; that direction is exact, the probe only checks it on finitely
    many resolutions and translates, so the report is evidence, not proof.
    """
    if part.dim != 2 or whole.dim != 2:
        raise InputError("summand probe is 2D")
    report = is_summand(part, whole)
    if grid.bounds is not None:
        lo, hi = grid.bounds
    else:
        plo, phi = part.bounding_box()
        wlo, whi = whole.bounding_box()
        margin = tuple((h - l) / 10 or Fraction(1) for l, h in zip(wlo, whi))
        lo = tuple(wl - ph - m for wl, ph, m in zip(wlo, phi, margin))
        hi = tuple(wh - pl + m for wh, pl, m in zip(whi, plo, margin))
    nx, ny = grid.counts
    slices = []
    all_ok = True
    for jy in range(ny):
        for jx in range(nx):
            t = (lo[0] + (hi[0] - lo[0]) * Fraction(2 * jx + 1, 2 * nx),
                 lo[1] + (hi[1] - lo[1]) * Fraction(2 * jy + 1, 2 * ny))
            shifted = part.translate(t)
            oracle = convex_difference_region(shifted, whole)
            profile = region_betti(oracle, resolution, 2)
            if profile.is_empty_complex:
                cls = "empty"
            elif not profile.nonzero():
                cls = "acyclic"
            else:
                cls = "other"
                all_ok = False
            slices.append((t, cls))
    consistent = (not report.is_summand) or all_ok
    return SummandProbeReport(report, tuple(slices), all_ok, consistent, resolution)
