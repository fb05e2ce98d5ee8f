"""Exact rational LP and faciality tests for the marginal polytope.

A set Y of configurations is facial when the convex hull of their matrix
columns is a face of the marginal polytope.  The test solves one LP in
exact rational arithmetic: maximize the mass placed outside Y among the
convex combinations of all columns that reproduce the barycenter of Y.
The optimum is zero exactly when Y is facial.  Both verdicts come with
certificates that re-check by exact arithmetic: a combination with outside
mass for "not a face", a strictly separating functional for "face".

No floating point is used anywhere in a verdict path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from itertools import combinations
from typing import Iterable, Sequence

from .complexes import SimplicialComplex
from .guards import Budget
from .parallel import run_ordered
from .spaces import Config, ConfigSpace, MarginalMatrix, layout, marginal_matrix

Frac = Fraction


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    optimum: Fraction | None
    solution: tuple[Fraction, ...] | None
    dual: tuple[Fraction, ...] | None


def lp_solve(rows: Sequence[Sequence[Fraction | int]],
             rhs: Sequence[Fraction | int],
             objective: Sequence[Fraction | int]) -> LPResult:
    """Maximize objective.x subject to rows.x = rhs, x >= 0, exactly.

    Two-phase simplex over rationals with Bland's smallest-index rule for
    both the entering and the leaving variable, so cycling is impossible.
    Returns the optimum, an optimal basic solution, and a dual vector (one
    multiplier per input row; redundant rows get multiplier zero).
    """
    m = len(rows)
    n = len(objective)
    cost = [Frac(c) for c in objective]
    flip = []
    tab: list[list[Fraction]] = []
    for i in range(m):
        row = [Frac(v) for v in rows[i]]
        if len(row) != n:
            raise ValueError("constraint row length does not match objective")
        b = Frac(rhs[i])
        if b < 0:
            row = [-v for v in row]
            b = -b
            flip.append(-1)
        else:
            flip.append(1)
        art = [Frac(0)] * m
        art[i] = Frac(1)
        tab.append(row + art + [b])
    basis = [n + i for i in range(m)]

    def pivot(r: int, j: int) -> None:
        piv = tab[r][j]
        tab[r] = [v / piv for v in tab[r]]
        for i in range(len(tab)):
            if i != r and tab[i][j]:
                f = tab[i][j]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[r])]
        basis[r] = j

    def reduced_costs(costs: list[Fraction], allowed: int) -> list[Fraction]:
        z = costs[:allowed].copy()
        for i, bi in enumerate(basis):
            cb = costs[bi] if bi < len(costs) else Frac(0)
            if cb:
                row = tab[i]
                for j in range(allowed):
                    z[j] -= cb * row[j]
        return z

    def run(costs: list[Fraction], allowed: int) -> str:
        while True:
            z = reduced_costs(costs, allowed)
            enter = next((j for j in range(allowed)
                          if j not in basis and z[j] > 0), None)
            if enter is None:
                return "optimal"
            leave = None
            best = None
            for i in range(len(tab)):
                a = tab[i][enter]
                if a > 0:
                    ratio = tab[i][-1] / a
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                        best = ratio
                        leave = i
            if leave is None:
                return "unbounded"
            pivot(leave, enter)

    # phase 1: maximize minus the sum of artificials
    costs1 = [Frac(0)] * n + [Frac(-1)] * m
    run(costs1, n + m)
    infeasibility = sum(tab[i][-1] for i in range(len(tab)) if basis[i] >= n)
    if infeasibility > 0:
        return LPResult("infeasible", None, None, None)
    # drive remaining artificials out of the basis or drop redundant rows
    for i in reversed(range(len(tab))):
        if basis[i] < n:
            continue
        enter = next((j for j in range(n) if tab[i][j] != 0), None)
        if enter is not None:
            pivot(i, enter)
        else:
            del tab[i]
            del basis[i]

    status = run(cost + [Frac(0)] * m, n)
    if status == "unbounded":
        return LPResult("unbounded", None, None, None)

    solution = [Frac(0)] * n
    value = Frac(0)
    for i, bi in enumerate(basis):
        solution[bi] = tab[i][-1]
        value += cost[bi] * tab[i][-1]
    # y = c_B^T R, where R (the artificial block) maps original rows to the
    # final tableau rows; redundant rows may still carry nonzero multipliers
    # because pivots mix their artificial columns before they are dropped
    dual = []
    for i0 in range(m):
        y = sum(cost[basis[i]] * tab[i][n + i0] for i in range(len(tab)))
        dual.append(y * flip[i0])
    return LPResult("optimal", value, tuple(solution), tuple(dual))


@dataclass(frozen=True)
class FacialityCertificate:
    """Exact evidence for a faciality verdict on a set Y of configurations.

    For a non-face: `combination` is a convex combination of all columns
    with value `barycenter` and positive mass outside Y.  For a face:
    `separating` is a functional equal to `separation_value` on the columns
    of Y and strictly smaller on every other column.
    """

    members: tuple[Config, ...]
    is_face: bool
    barycenter: tuple[Fraction, ...]
    combination: tuple[Fraction, ...] | None = None
    outside_mass: Fraction | None = None
    separating: tuple[Fraction, ...] | None = None
    separation_value: Fraction | None = None

    def recheck(self, matrix: MarginalMatrix) -> bool:
        """Re-verify the certificate against a marginal matrix, exactly."""
        member_ix = {matrix.col_labels.index(x) for x in self.members}
        bary = [Frac(0)] * matrix.nrows
        for ix in member_ix:
            for r, v in enumerate(matrix.column(ix)):
                bary[r] += Frac(v, len(member_ix))
        if tuple(bary) != self.barycenter:
            return False
        if self.is_face:
            theta = self.separating
            if theta is None or self.separation_value is None:
                return False
            for ix in range(matrix.ncols):
                val = sum(t * a for t, a in zip(theta, matrix.column(ix)))
                if ix in member_ix:
                    if val != self.separation_value:
                        return False
                elif val >= self.separation_value:
                    return False
            return True
        lam = self.combination
        if lam is None or self.outside_mass is None or self.outside_mass <= 0:
            return False
        if len(lam) != matrix.ncols or any(v < 0 for v in lam):
            return False
        if sum(lam) != 1:
            return False
        outside = sum(v for ix, v in enumerate(lam) if ix not in member_ix)
        if outside != self.outside_mass:
            return False
        for r in range(matrix.nrows):
            row = matrix.rows[r]
            if sum(l * a for l, a in zip(lam, row)) != self.barycenter[r]:
                return False
        return True


def is_facial(cx: SimplicialComplex, space: ConfigSpace,
              members: Iterable[Sequence[int]]) -> FacialityCertificate:
    """Decide whether conv of the columns of Y is a face of the polytope.

    Columns that hit a zero coordinate of the barycenter can carry no mass
    and are eliminated before the LP; when no outside column survives the
    verdict is immediate.  Duplicate columns across the Y boundary are a
    non-face by themselves and short-circuit the LP.
    """
    lay = layout(cx, space)
    y_ix = sorted({space.index(tuple(x)) for x in members})
    if not y_ix:
        raise ValueError("Y must be nonempty")
    y_set = set(y_ix)
    size = space.size
    y_configs = tuple(space.config(ix) for ix in y_ix)

    bary = [Frac(0)] * lay.nrows
    for ix in y_ix:
        for r in _column(lay, ix):
            bary[r] += Frac(1, len(y_ix))
    bary_t = tuple(bary)

    # duplicate-column guard
    col_of = {}
    for ix in y_ix:
        col_of[_column(lay, ix)] = ix
    for ix in range(size):
        if ix in y_set:
            continue
        twin = col_of.get(_column(lay, ix))
        if twin is not None:
            lam = [Frac(0)] * size
            for jx in y_ix:
                lam[jx] = Frac(1, len(y_ix))
            lam[ix] = lam[twin]
            lam[twin] = Frac(0)
            return FacialityCertificate(y_configs, False, bary_t,
                                        combination=tuple(lam),
                                        outside_mass=Frac(1, len(y_ix)))

    zero_rows = [r for r in range(lay.nrows) if bary[r] == 0]
    zero_set = set(zero_rows)
    survivors = [ix for ix in range(size)
                 if all(r not in zero_set for r in _column(lay, ix))]
    outside = [ix for ix in survivors if ix not in y_set]

    if not outside:
        theta = [Frac(0)] * lay.nrows
        for r in zero_rows:
            theta[r] = Frac(-1)
        return FacialityCertificate(y_configs, True, bary_t,
                                    separating=tuple(theta),
                                    separation_value=Frac(0))

    kept_rows = [r for r in range(lay.nrows) if bary[r] != 0]
    a_rows: list[list[Fraction]] = []
    for r in kept_rows:
        a_rows.append([Frac(1) if r in _column(lay, ix) else Frac(0)
                       for ix in survivors])
    a_rows.append([Frac(1)] * len(survivors))
    rhs = [bary[r] for r in kept_rows] + [Frac(1)]
    objective = [Frac(0) if ix in y_set else Frac(1) for ix in survivors]
    res = lp_solve(a_rows, rhs, objective)
    if res.status != "optimal":
        raise AssertionError(f"faciality LP unexpectedly {res.status}")

    if res.optimum > 0:
        lam = [Frac(0)] * size
        for pos, ix in enumerate(survivors):
            lam[ix] = res.solution[pos]
        return FacialityCertificate(y_configs, False, bary_t,
                                    combination=tuple(lam),
                                    outside_mass=res.optimum)

    # optimum zero: extract a strictly separating functional from the dual
    w = res.dual
    w0 = w[-1]
    theta = [Frac(0)] * lay.nrows
    for pos, r in enumerate(kept_rows):
        theta[r] = -w[pos]
    c0 = w0
    killed = [ix for ix in range(size) if ix not in set(survivors)]
    if killed:
        scale = Frac(1)
        for ix in killed:
            col = _column(lay, ix)
            base = sum(theta[r] for r in col if r not in zero_set)
            hits = sum(1 for r in col if r in zero_set)
            need = (base - c0 + 1) / hits
            if need > scale:
                scale = need
        for r in zero_rows:
            theta[r] = -scale
    return FacialityCertificate(y_configs, True, bary_t,
                                separating=tuple(theta), separation_value=c0)


def _column(lay, ix: int) -> tuple[int, ...]:
    return lay.rows_of[ix]


@dataclass(frozen=True)
class NeighborlinessReport:
    k: int
    k_max: int
    witness: FacialityCertificate | None


def _facial_verdict(cx: SimplicialComplex, space: ConfigSpace,
                    combo: tuple[int, ...]) -> FacialityCertificate | None:
    cert = is_facial(cx, space, [space.config(ix) for ix in combo])
    return None if cert.is_face else cert


def neighborliness(cx: SimplicialComplex, space: ConfigSpace, k_max: int,
                   *, ceiling: int | None = None, workers: int = 1) -> NeighborlinessReport:
    """Largest k <= k_max such that every set of <= k columns spans a face.

    Sweeps set sizes in increasing order and, within a size, subsets in
    lexicographic order; stops at the first non-facial set, which is
    returned as the witness.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    budget = Budget(ceiling, "subsets tested")
    size = space.size
    for k in range(1, min(k_max, size) + 1):
        combos = list(combinations(range(size), k))
        budget.spend(len(combos))
        verdicts = run_ordered(partial(_facial_verdict, cx, space), combos, workers)
        for cert in verdicts:
            if cert is not None:
                return NeighborlinessReport(k - 1, k_max, cert)
    return NeighborlinessReport(min(k_max, size), k_max, None)


def polytope_dimension(cx: SimplicialComplex, space: ConfigSpace) -> int:
    """Affine dimension of the polytope: rank of the shifted column family."""
    matrix = marginal_matrix(cx, space)
    if matrix.ncols <= 1:
        return 0
    base = matrix.column(0)
    vecs = [[Frac(a - b) for a, b in zip(matrix.column(j), base)]
            for j in range(1, matrix.ncols)]
    rank = 0
    ncoords = matrix.nrows
    row = 0
    for col in range(ncoords):
        pivot_row = next((i for i in range(row, len(vecs)) if vecs[i][col] != 0), None)
        if pivot_row is None:
            continue
        vecs[row], vecs[pivot_row] = vecs[pivot_row], vecs[row]
        pv = vecs[row][col]
        vecs[row] = [v / pv for v in vecs[row]]
        for i in range(len(vecs)):
            if i != row and vecs[i][col]:
                f = vecs[i][col]
                vecs[i] = [a - f * b for a, b in zip(vecs[i], vecs[row])]
        row += 1
        rank += 1
        if row == len(vecs):
            break
    return rank
