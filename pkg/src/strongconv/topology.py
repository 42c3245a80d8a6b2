"""Simplicial complexes with exact reduced rational homology.

The chain complex is always augmented: the empty simplex is a genuine
(-1)-dimensional cell of every non-void complex, and the void complex (no
simplices at all, not even the empty one) is a distinct value.  Keeping that
distinction honest is what makes the Alexander-dual edge cases and the
degree -1 terms of the join formula come out exactly right.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import InputError, SizeCapError
from .numeric import matrix_rank

Label = object  # int or str
Simplex = frozenset

MESHULAM_PART_CAP = 16
LINK_CHECK_SIMPLEX_CAP = 50_000
NERVE_TEST_CAP = 200_000


def _label_key(v):
    return (0, v) if isinstance(v, int) else (1, str(v))


def _sorted_labels(labels) -> tuple:
    return tuple(sorted(labels, key=_label_key))


class SimplicialComplex:
    """Finite downward-closed simplex family on an explicit ground vertex set.

    simplices is a frozenset of frozensets including the empty simplex; a
    complex with no simplices at all is the void complex.  An optional color
    partition splits the ground set into nonempty disjoint parts.
    """

    __slots__ = ("vertices", "simplices", "partition")

    def __init__(self, vertices: Iterable, simplices: Iterable[Simplex],
                 partition: Sequence[Sequence] | None = None, validate: bool = True):
        object.__setattr__(self, "vertices", _sorted_labels(set(vertices)))
        object.__setattr__(self, "simplices", frozenset(frozenset(s) for s in simplices))
        part = tuple(_sorted_labels(p) for p in partition) if partition is not None else None
        object.__setattr__(self, "partition", part)
        if validate:
            self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("SimplicialComplex is immutable")

    def _validate(self):
        vset = set(self.vertices)
        for s in self.simplices:
            if not s <= vset:
                raise InputError(f"simplex {sorted(s, key=_label_key)} uses unknown vertices")
            for v in s:
                face = s - {v}
                if face not in self.simplices:
                    raise InputError("simplex family is not downward closed")
        if self.simplices and frozenset() not in self.simplices:
            raise InputError("non-void complex must contain the empty simplex")
        if self.partition is not None:
            flat = [v for part in self.partition for v in part]
            if len(flat) != len(set(flat)) or set(flat) != vset:
                raise InputError("partition must cover the vertices disjointly")
            if any(not part for part in self.partition):
                raise InputError("partition parts must be nonempty")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable], vertices: Iterable = (),
                    partition: Sequence[Sequence] | None = None) -> "SimplicialComplex":
        """Downward closure of the given facets.  No facets means the void complex;
        use a single empty facet for the empty-simplex-only complex."""
        simplices = set()
        verts = set(vertices)
        for f in facets:
            fs = frozenset(f)
            verts |= fs
            for k in range(len(fs) + 1):
                for sub in itertools.combinations(_sorted_labels(fs), k):
                    simplices.add(frozenset(sub))
        return cls(verts, simplices, partition, validate=partition is not None)

    @classmethod
    def void(cls, vertices: Iterable = ()) -> "SimplicialComplex":
        return cls(vertices, (), validate=False)

    @classmethod
    def full_simplex(cls, vertices: Iterable) -> "SimplicialComplex":
        return cls.from_facets([tuple(vertices)])

    # -- basic queries -----------------------------------------------------

    @property
    def is_void(self) -> bool:
        return not self.simplices

    def dim(self) -> int:
        if self.is_void:
            raise InputError("void complex has no dimension")
        return max(len(s) for s in self.simplices) - 1

    def has(self, simplex: Iterable) -> bool:
        return frozenset(simplex) in self.simplices

    def simplices_of_dim(self, k: int) -> list[tuple]:
        out = [_sorted_labels(s) for s in self.simplices if len(s) == k + 1]
        out.sort(key=lambda s: tuple(_label_key(v) for v in s))
        return out

    def maximal_simplices(self) -> list[tuple]:
        maximal = [s for s in self.simplices
                   if not any(s < t for t in self.simplices)]
        out = [_sorted_labels(s) for s in maximal]
        out.sort(key=lambda s: (len(s), tuple(_label_key(v) for v in s)))
        return out

    def euler_characteristic(self) -> int:
        """Alternating count of nonempty simplices."""
        return sum((-1) ** (len(s) - 1) for s in self.simplices if s)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (self.vertices == other.vertices and self.simplices == other.simplices)

    def __hash__(self):
        return hash((self.vertices, self.simplices))

    def __repr__(self):
        if self.is_void:
            return f"SimplicialComplex(void, |V|={len(self.vertices)})"
        return f"SimplicialComplex(|V|={len(self.vertices)}, |simplices|={len(self.simplices)})"

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        doc = {"vertices": list(self.vertices),
               "facets": [list(f) for f in self.maximal_simplices()]}
        if self.partition is not None:
            doc["partition"] = [list(p) for p in self.partition]
        return doc

    @classmethod
    def from_json_dict(cls, doc: dict) -> "SimplicialComplex":
        return cls.from_facets(doc.get("facets", []), doc.get("vertices", ()),
                               doc.get("partition"))


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced rational Betti numbers per dimension (degree -1 included).

    The void complex carries no Betti numbers at all; the empty-simplex-only
    complex has exactly one unit in degree -1.
    """

    betti: dict
    is_empty_complex: bool = False

    def at(self, k: int) -> int:
        return self.betti.get(k, 0)

    def nonzero(self) -> dict:
        return {k: v for k, v in sorted(self.betti.items()) if v}

    def __eq__(self, other):
        if not isinstance(other, HomologyProfile):
            return NotImplemented
        return self.is_empty_complex == other.is_empty_complex and self.nonzero() == other.nonzero()

    def __hash__(self):
        return hash((self.is_empty_complex, tuple(sorted(self.nonzero().items()))))

    def to_json_dict(self) -> dict:
        doc = {"betti": {str(k): v for k, v in self.nonzero().items()}}
        if self.is_empty_complex:
            doc["empty"] = True
        return doc


def _boundary_matrix(lower: list[tuple], upper: list[tuple]) -> list[list[Fraction]]:
    index = {s: i for i, s in enumerate(lower)}
    zero, one = Fraction(0), Fraction(1)
    rows = [[zero] * len(upper) for _ in lower]
    for j, s in enumerate(upper):
        for i, v in enumerate(s):
            face = s[:i] + s[i + 1:]
            rows[index[face]][j] = one if i % 2 == 0 else -one
    return rows


def reduced_betti(complex_: SimplicialComplex) -> HomologyProfile:
    """Reduced Betti numbers over the rationals via exact boundary ranks."""
    if complex_.is_void:
        return HomologyProfile({}, is_empty_complex=True)
    top = complex_.dim()
    chains = {k: complex_.simplices_of_dim(k) for k in range(-1, top + 1)}
    ranks = {}
    for k in range(0, top + 1):
        if chains[k] and chains[k - 1]:
            ranks[k] = matrix_rank(_boundary_matrix(chains[k - 1], chains[k]))
        else:
            ranks[k] = 0
    ranks[top + 1] = 0
    betti = {}
    for k in range(-1, top + 1):
        betti[k] = len(chains[k]) - ranks.get(k, 0) - ranks[k + 1]
    return HomologyProfile(betti)


def is_acyclic_complex(complex_: SimplicialComplex) -> bool:
    """True iff every reduced Betti number vanishes.  Void input is an error:
    emptiness and acyclicity are different things."""
    if complex_.is_void:
        raise InputError("acyclicity is undefined for the void complex")
    return not reduced_betti(complex_).nonzero()


def link(complex_: SimplicialComplex, simplex: Iterable) -> SimplicialComplex:
    """Link of a simplex: faces disjoint from it whose union with it is a face."""
    sigma = frozenset(simplex)
    if sigma not in complex_.simplices:
        raise InputError("link of a simplex that is not in the complex")
    members = [tau for tau in complex_.simplices
               if not (tau & sigma) and (tau | sigma) in complex_.simplices]
    verts = set().union(*members) if members else set()
    return SimplicialComplex(verts, members, validate=False)


def induced_subcomplex(complex_: SimplicialComplex, *, vertices: Iterable | None = None,
                       colors: Iterable | None = None) -> SimplicialComplex:
    """Subcomplex of all simplices supported on the chosen vertices or colors."""
    if (vertices is None) == (colors is None):
        raise InputError("give exactly one of vertices= or colors=")
    if colors is not None:
        if complex_.partition is None:
            raise InputError("color selection needs a partitioned complex")
        colors = sorted(set(colors))
        if any(not 0 <= c < len(complex_.partition) for c in colors):
            raise InputError(f"unknown color index in {colors}")
        chosen = set().union(*(complex_.partition[c] for c in colors)) if colors else set()
    else:
        chosen = set(vertices)
        unknown = chosen - set(complex_.vertices)
        if unknown:
            raise InputError(f"unknown vertices: {_sorted_labels(unknown)}")
    if not chosen:
        raise InputError("induced subcomplex needs a nonempty selection")
    members = [s for s in complex_.simplices if s <= chosen]
    return SimplicialComplex(chosen, members, validate=False)


def alexander_dual(complex_: SimplicialComplex, *, subset_cap: int = 2 ** 22) -> SimplicialComplex:
    """Combinatorial Alexander dual {S : complement of S is not a face}.

    The family is automatically downward closed.  The dual of the full simplex
    is the void complex (check is_void on the result).
    """
    verts = complex_.vertices
    if 2 ** len(verts) > subset_cap:
        raise SizeCapError(f"Alexander dual over {len(verts)} vertices exceeds the cap")
    vset = frozenset(verts)
    members = []
    for k in range(len(verts) + 1):
        for sub in itertools.combinations(verts, k):
            s = frozenset(sub)
            if (vset - s) not in complex_.simplices:
                members.append(s)
    return SimplicialComplex(verts, members, validate=False)


def join_complexes(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    """Join: all unions of a face of a with a face of b.

    Vertex labels are prefixed ('a.' / 'b.') when the ground sets collide.
    """
    if set(a.vertices) & set(b.vertices):
        map_a = {v: f"a.{v}" for v in a.vertices}
        map_b = {v: f"b.{v}" for v in b.vertices}
        a = SimplicialComplex((map_a[v] for v in a.vertices),
                              (frozenset(map_a[x] for x in s) for s in a.simplices),
                              validate=False)
        b = SimplicialComplex((map_b[v] for v in b.vertices),
                              (frozenset(map_b[x] for x in s) for s in b.simplices),
                              validate=False)
    members = {sa | sb for sa in a.simplices for sb in b.simplices}
    return SimplicialComplex(tuple(a.vertices) + tuple(b.vertices), members, validate=False)


def partial_transversal_complex(parts: Sequence) -> SimplicialComplex:
    """Complex whose faces pick at most one vertex from each part.

    parts: either part sizes (ints, auto-labeled 'p<i>.<j>') or explicit label
    lists.  This is the join of discrete vertex sets.
    """
    if all(isinstance(p, int) for p in parts):
        parts = [[f"p{i}.{j}" for j in range(size)] for i, size in enumerate(parts)]
    else:
        parts = [list(p) for p in parts]
    members = set()
    for choice in itertools.product(*[[None] + list(p) for p in parts]):
        members.add(frozenset(v for v in choice if v is not None))
    verts = [v for p in parts for v in p]
    return SimplicialComplex(verts, members, partition=parts)


def nerve(family_size: int, intersection_test: Callable[[tuple[int, ...]], bool], *,
          test_cap: int = NERVE_TEST_CAP) -> SimplicialComplex:
    """Nerve of an abstract family: faces are index sets with common points.

    intersection_test receives a sorted index tuple and must decide exactly
    whether the corresponding regions share a point.  Since emptiness is
    monotone, a subset is only tested when all its co-dimension-1 faces
    passed.
    """
    tests = 0
    members = {frozenset()}
    current = []
    for i in range(family_size):
        tests += 1
        if tests > test_cap:
            raise SizeCapError("nerve intersection tests exceed the cap")
        if intersection_test((i,)):
            members.add(frozenset([i]))
            current.append(frozenset([i]))
    while current:
        passed = set(current)
        nxt = []
        candidates = set()
        for s in current:
            top = max(s)
            for j in range(top + 1, family_size):
                candidates.add(s | {j})
        for cand in sorted(candidates, key=lambda s: tuple(sorted(s))):
            if not all((cand - {v}) in passed for v in cand):
                continue
            tests += 1
            if tests > test_cap:
                raise SizeCapError("nerve intersection tests exceed the cap")
            if intersection_test(tuple(sorted(cand))):
                members.add(cand)
                nxt.append(cand)
        current = nxt
    return SimplicialComplex(range(family_size), members, validate=False)


@dataclass(frozen=True)
class MeshulamReport:
    hypothesis_holds: bool
    subsets_checked: int
    violating_colors: tuple[int, ...] | None = None
    violating_profile: HomologyProfile | None = None
    colorful_simplex: tuple | None = None

    def to_json_dict(self) -> dict:
        doc = {"hypothesis_holds": self.hypothesis_holds,
               "subsets_checked": self.subsets_checked}
        if self.violating_colors is not None:
            doc["violating_colors"] = list(self.violating_colors)
            doc["violating_betti"] = self.violating_profile.to_json_dict()["betti"]
        if self.colorful_simplex is not None:
            doc["colorful_simplex"] = list(self.colorful_simplex)
        return doc


def meshulam_check(complex_: SimplicialComplex, *, part_cap: int = MESHULAM_PART_CAP) -> MeshulamReport:
    """Check the colorful-simplex sufficient condition and find the simplex.

    Hypothesis: for every nonempty color subset I the induced subcomplex has
    vanishing reduced homology in all degrees <= |I| - 2.  When it holds, a
    transversal of all parts that forms a face is searched exhaustively.
    """
    if complex_.partition is None:
        raise InputError("meshulam check needs a partitioned complex")
    n_parts = len(complex_.partition)
    if n_parts > part_cap:
        raise SizeCapError(f"{n_parts} parts exceed the cap of {part_cap} (2^N subsets)")
    checked = 0
    for size in range(1, n_parts + 1):
        for colors in itertools.combinations(range(n_parts), size):
            checked += 1
            profile = reduced_betti(induced_subcomplex(complex_, colors=colors))
            bad = {k: v for k, v in profile.nonzero().items() if k <= size - 2}
            if bad:
                return MeshulamReport(False, checked, violating_colors=colors,
                                      violating_profile=profile)
    for choice in itertools.product(*complex_.partition):
        if frozenset(choice) in complex_.simplices:
            return MeshulamReport(True, checked, colorful_simplex=_sorted_labels(choice))
    return MeshulamReport(True, checked)


@dataclass(frozen=True)
class LinkConditionReport:
    transversals_ok: bool
    global_homology_ok: bool
    link_homology_ok: bool
    partition_ok: bool
    pair: tuple[int, int] | None = None
    missing_transversal: tuple | None = None
    homology_witness: tuple | None = None   # (degree, betti)
    link_witness: tuple | None = None       # (simplex, degree, betti)

    @property
    def conditions_hold(self) -> bool:
        return (self.partition_ok and self.transversals_ok
                and self.global_homology_ok and self.link_homology_ok)

    def to_json_dict(self) -> dict:
        doc = {"partition_ok": self.partition_ok,
               "transversals_ok": self.transversals_ok,
               "global_homology_ok": self.global_homology_ok,
               "link_homology_ok": self.link_homology_ok}
        if self.pair is not None:
            doc["pair"] = list(self.pair)
        if self.missing_transversal is not None:
            doc["missing_transversal"] = list(self.missing_transversal)
        if self.homology_witness is not None:
            doc["homology_witness"] = {"degree": self.homology_witness[0],
                                       "betti": self.homology_witness[1]}
        if self.link_witness is not None:
            doc["link_witness"] = {"simplex": list(self.link_witness[0]),
                                   "degree": self.link_witness[1],
                                   "betti": self.link_witness[2]}
        return doc


def very_colorful_link_check(complex_: SimplicialComplex, n: int | None = None, *,
                             simplex_cap: int = LINK_CHECK_SIMPLEX_CAP) -> LinkConditionReport:
    """Verify the four link conditions, then find the promised two-part simplex.

    Conditions on a complex partitioned into V_0..V_n: every transversal is a
    face; reduced homology of the whole complex vanishes in degrees >= n; the
    link of every nonempty face has vanishing reduced homology in degrees
    >= n - 1.  When everything holds, a pair i < j with V_i u V_j a face is
    returned (guaranteed to exist).
    """
    if complex_.partition is None:
        raise InputError("link-condition check needs a partitioned complex")
    if len(complex_.simplices) > simplex_cap:
        raise SizeCapError(f"complex with {len(complex_.simplices)} simplices exceeds the cap")
    if n is None:
        n = len(complex_.partition) - 1
    partition_ok = True  # nonemptiness and disjoint cover are constructor invariants

    missing = None
    for choice in itertools.product(*complex_.partition):
        if frozenset(choice) not in complex_.simplices:
            missing = _sorted_labels(choice)
            break
    transversals_ok = missing is None

    profile = reduced_betti(complex_)
    hom_witness = next(((k, v) for k, v in sorted(profile.nonzero().items()) if k >= n), None)
    global_ok = hom_witness is None

    link_witness = None
    nonempty = sorted((s for s in complex_.simplices if s),
                      key=lambda s: (len(s), tuple(_label_key(v) for v in _sorted_labels(s))))
    for sigma in nonempty:
        lk_profile = reduced_betti(link(complex_, sigma))
        bad = next(((k, v) for k, v in sorted(lk_profile.nonzero().items()) if k >= n - 1), None)
        if bad is not None:
            link_witness = (_sorted_labels(sigma), bad[0], bad[1])
            break
    link_ok = link_witness is None

    pair = None
    if partition_ok and transversals_ok and global_ok and link_ok:
        for i, j in itertools.combinations(range(len(complex_.partition)), 2):
            union = frozenset(complex_.partition[i]) | frozenset(complex_.partition[j])
            if union in complex_.simplices:
                pair = (i, j)
                break
    return LinkConditionReport(transversals_ok, global_ok, link_ok, partition_ok,
                               pair=pair, missing_transversal=missing,
                               homology_witness=hom_witness, link_witness=link_witness)
