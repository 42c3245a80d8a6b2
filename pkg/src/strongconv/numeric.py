"""Exact rational arithmetic substrate: parsing, linear programming, matrix rank.

Everything here works over `fractions.Fraction`.  There are no tolerances
anywhere: feasibility, optimality and rank are decided by exact comparison.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, InputError

Rational = Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def rat(value) -> Fraction:
    """Parse an exact rational from an int, Fraction or 'p/q' string.

    Floats are rejected: every quantity in this package must be exact.
    """
    if isinstance(value, bool):
        raise InputError(f"not an exact rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not an exact rational: {value!r}") from exc
    raise InputError(f"not an exact rational: {value!r} (floats are not accepted)")


def rat_str(value) -> str:
    """Serialize a rational as 'p/q', or 'p' when the denominator is 1."""
    return str(Fraction(value))


def vec(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(rat(v) for v in values)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise DimensionMismatchError(f"dot of length {len(a)} with length {len(b)}")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class LPOutcome:
    """Result of an exact LP solve: status plus optimum/point when optimal."""

    status: str
    optimum: Fraction | None = None
    point: tuple[Fraction, ...] | None = None


def _pivot(tab: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = tab[row][col]
    inv = Fraction(1) / piv
    tab[row] = [x * inv for x in tab[row]]
    prow = tab[row]
    for i, r in enumerate(tab):
        if i == row:
            continue
        f = r[col]
        if f:
            tab[i] = [x - f * y for x, y in zip(r, prow)]
    basis[row] = col


def _simplex_max(tab: list[list[Fraction]], basis: list[int], ncols: int) -> str:
    """Run the simplex method on a tableau in canonical form, maximizing.

    The last row is the objective (reduced costs), the last column the RHS.
    Bland's rule on both the entering and leaving choice guarantees
    termination without any nondegeneracy assumption.
    """
    m = len(tab) - 1
    while True:
        obj = tab[-1]
        enter = -1
        for j in range(ncols):
            if obj[j] > 0:
                enter = j
                break
        if enter < 0:
            return OPTIMAL
        leave = -1
        best: Fraction | None = None
        for i in range(m):
            aij = tab[i][enter]
            if aij > 0:
                ratio = tab[i][-1] / aij
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return UNBOUNDED
        _pivot(tab, basis, leave, enter)


def lp_optimize(objective: Sequence, halfspaces: Sequence[tuple[Sequence, object]]) -> LPOutcome:
    """Maximize objective . x subject to a . x <= b for each halfspace (a, b).

    Variables are free; internally each is split into a difference of two
    nonnegative variables and a two-phase simplex with Bland's rule runs on
    exact rationals.  The returned point satisfies every constraint exactly
    and is a vertex of the feasible region whenever one exists.
    """
    c = vec(objective)
    d = len(c)
    rows = []
    for a, b in halfspaces:
        av = vec(a)
        if len(av) != d:
            raise DimensionMismatchError(
                f"constraint dimension {len(av)} does not match objective dimension {d}")
        rows.append((av, rat(b)))
    m = len(rows)

    # columns: u_0..u_{d-1}, v_0..v_{d-1}, s_0..s_{m-1}, then artificials
    nstruct = 2 * d + m
    art_rows = [i for i, (_, b) in enumerate(rows) if b < 0]
    ncols = nstruct + len(art_rows)
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    art_col = {}
    for idx, i in enumerate(art_rows):
        art_col[i] = nstruct + idx
    zero = Fraction(0)
    for i, (a, b) in enumerate(rows):
        sign = -1 if b < 0 else 1
        row = [sign * x for x in a] + [-sign * x for x in a] + [zero] * (m + len(art_rows)) + [sign * b]
        row[2 * d + i] = Fraction(sign)
        if i in art_col:
            row[art_col[i]] = Fraction(1)
            basis.append(art_col[i])
        else:
            basis.append(2 * d + i)
        tab.append(row)

    if art_rows:
        # phase 1: maximize -(sum of artificials); price out the basic artificials
        obj = [zero] * (ncols + 1)
        for i in art_rows:
            obj = [o + x for o, x in zip(obj, tab[i])]
        for idx in range(len(art_rows)):
            obj[nstruct + idx] = zero
        tab.append(obj)
        status = _simplex_max(tab, basis, ncols)
        assert status == OPTIMAL  # phase 1 is bounded below by 0
        art_total = sum((tab[i][-1] for i, bi in enumerate(basis) if bi >= nstruct), zero)
        if art_total != 0:
            return LPOutcome(INFEASIBLE)
        tab.pop()
        # drive any zero-valued artificials out of the basis
        drop_rows = []
        for i in range(m):
            if basis[i] >= nstruct:
                piv_col = next((j for j in range(nstruct) if tab[i][j] != 0), -1)
                if piv_col < 0:
                    drop_rows.append(i)  # redundant constraint
                else:
                    _pivot(tab, basis, i, piv_col)
        for i in reversed(drop_rows):
            tab.pop(i)
            basis.pop(i)
        # drop artificial columns
        tab = [r[:nstruct] + [r[-1]] for r in tab]
        ncols = nstruct

    # phase 2: price out the real objective over the current basis
    cx = list(c) + [-x for x in c] + [zero] * (ncols - 2 * d)
    obj = list(cx) + [zero]
    for i, bi in enumerate(basis):
        f = cx[bi]
        if f:
            obj = [o - f * x for o, x in zip(obj, tab[i])]
    tab.append(obj)
    status = _simplex_max(tab, basis, ncols)
    if status == UNBOUNDED:
        return LPOutcome(UNBOUNDED)
    xs = [zero] * ncols
    for i, bi in enumerate(basis):
        xs[bi] = tab[i][-1]
    point = tuple(xs[j] - xs[d + j] for j in range(d))
    return LPOutcome(OPTIMAL, optimum=dot(c, point), point=point)


def lp_feasible_point(halfspaces: Sequence[tuple[Sequence, object]], dim: int) -> tuple[Fraction, ...] | None:
    """Return some exact feasible point of the halfspace system, or None."""
    out = lp_optimize([0] * dim, halfspaces)
    return out.point if out.status == OPTIMAL else None


@dataclass(frozen=True)
class RationalMatrix:
    """Dense rational matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise InputError("entry count does not equal rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        ents = []
        for row in rows:
            if len(row) != c:
                raise InputError("ragged matrix rows")
            ents.extend(rat(x) for x in row)
        return cls(r, c, tuple(ents))

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def transpose(self) -> "RationalMatrix":
        ents = [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)]
        return RationalMatrix(self.cols, self.rows, tuple(ents))

    def rank(self) -> int:
        return matrix_rank(self)


def matrix_rank(m) -> int:
    """Exact rank over the rationals by dense Gaussian elimination."""
    if isinstance(m, RationalMatrix):
        rows = [list(m.row(i)) for i in range(m.rows)]
    else:
        rows = [[rat(x) for x in r] for r in m]
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    rank = 0
    col = 0
    nrows = len(rows)
    while rank < nrows and col < ncols:
        piv = next((i for i in range(rank, nrows) if rows[i][col] != 0), -1)
        if piv < 0:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = Fraction(1) / prow[col]
        rows[rank] = prow = [x * inv for x in prow]
        for i in range(nrows):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        rank += 1
        col += 1
    return rank
