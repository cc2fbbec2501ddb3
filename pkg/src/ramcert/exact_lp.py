"""Dense two-phase simplex over the rationals with Bland's rule.

Every number is a ``fractions.Fraction``; there is no floating point and
no tolerance.  The pivoting rule is deterministic, so identical input
yields an identical basis and solution.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Optional[tuple]  # a feasible point (also reported when unbounded)
    objective: Optional[Fraction]
    pivots: int = 0


class _Tableau:
    def __init__(self, rows, rhs, basis, n_cols):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.n_cols = n_cols
        self.pivots = 0

    def pivot(self, r: int, col: int, obj: list) -> Fraction:
        row = self.rows[r]
        p = row[col]
        if p != 1:
            inv = 1 / p
            row = [v * inv if v else v for v in row]
            self.rows[r] = row
            self.rhs[r] *= inv
        nz = [j for j, v in enumerate(row) if v]
        b_r = self.rhs[r]
        for i, other in enumerate(self.rows):
            if i != r:
                f = other[col]
                if f:
                    for j in nz:
                        other[j] -= f * row[j]
                    self.rhs[i] -= f * b_r
        f = obj[col]
        shift = _ZERO
        if f:
            for j in nz:
                obj[j] -= f * row[j]
            shift = f * b_r
        self.basis[r] = col
        self.pivots += 1
        return shift

    def run(self, obj: list, allowed: int) -> tuple[str, Fraction]:
        """Maximise; ``obj`` holds reduced costs, columns >= ``allowed`` never enter."""
        value = _ZERO
        while True:
            col = next((j for j in range(allowed) if obj[j] > 0), None)
            if col is None:
                return OPTIMAL, value
            best = None
            for i, row in enumerate(self.rows):
                a = row[col]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED, value
            value += self.pivot(best[1], col, obj)

    def solution(self, n: int) -> tuple:
        x = [_ZERO] * n
        for i, j in enumerate(self.basis):
            if j < n:
                x[j] = self.rhs[i]
        return tuple(x)


def simplex_max(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Maximise c.x subject to A x = b, x >= 0.

    Slack columns already present in ``A`` are used as the starting basis
    for their rows (column with a single +1 entry and b_i >= 0); the other
    rows receive artificial variables.
    """
    m = len(A)
    n = len(c)
    rows = [[Fraction(v) for v in row] for row in A]
    rhs = [Fraction(v) for v in b]
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    basis: list = [None] * m
    for j in range(n):
        col = [rows[i][j] for i in range(m)]
        nz = [i for i in range(m) if col[i]]
        if len(nz) == 1 and col[nz[0]] == 1 and basis[nz[0]] is None:
            basis[nz[0]] = j
    art_rows = [i for i in range(m) if basis[i] is None]
    n_art = len(art_rows)
    for i in range(m):
        rows[i].extend([_ZERO] * n_art)
    for k, i in enumerate(art_rows):
        rows[i][n + k] = Fraction(1)
        basis[i] = n + k
    tab = _Tableau(rows, rhs, basis, n + n_art)

    # phase 1: maximise -(sum of artificials)
    if n_art:
        obj = [_ZERO] * (n + n_art)
        value = _ZERO
        for i in art_rows:
            for j in range(n):
                obj[j] += rows[i][j]
            value -= rhs[i]
        status, gain = tab.run(obj, n)
        value += gain
        if value != 0:
            return LPResult(INFEASIBLE, None, None, tab.pivots)
        # drive remaining artificials out of the basis; drop redundant rows
        r = 0
        while r < len(tab.rows):
            if tab.basis[r] >= n:
                col = next((j for j in range(n) if tab.rows[r][j]), None)
                if col is None:
                    del tab.rows[r], tab.rhs[r], tab.basis[r]
                    continue
                tab.pivot(r, col, [_ZERO] * (n + n_art))
            r += 1
        for row in tab.rows:
            del row[n:]

    # phase 2
    obj = [Fraction(v) for v in c]
    value = _ZERO
    for i, j in enumerate(tab.basis):
        cj = obj[j]
        if cj:
            row = tab.rows[i]
            for k in range(n):
                if row[k]:
                    obj[k] -= cj * row[k]
            value += cj * tab.rhs[i]
    status, gain = tab.run(obj, n)
    value += gain
    return LPResult(status, tab.solution(n), value if status == OPTIMAL else None, tab.pivots)


def linprog_max(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    free: Sequence[bool] | None = None,
) -> LPResult:
    """Maximise c.x s.t. A_ub x <= b_ub, A_eq x = b_eq.

    Variables are nonnegative unless flagged in ``free``; free variables
    are split into positive and negative parts.
    """
    n = len(c)
    free = list(free) if free is not None else [False] * n
    cols = []  # (original index, sign)
    for j in range(n):
        cols.append((j, 1))
        if free[j]:
            cols.append((j, -1))
    nv = len(cols)
    n_ub = len(A_ub)

    def expand(row):
        return [Fraction(row[j]) * s for j, s in cols]

    rows, rhs = [], []
    for i, row in enumerate(A_ub):
        slack = [_ZERO] * n_ub
        slack[i] = Fraction(1)
        rows.append(expand(row) + slack)
        rhs.append(Fraction(b_ub[i]))
    for i, row in enumerate(A_eq):
        rows.append(expand(row) + [_ZERO] * n_ub)
        rhs.append(Fraction(b_eq[i]))
    cost = expand(c) + [_ZERO] * n_ub
    res = simplex_max(cost, rows, rhs)
    if res.x is None:
        return res
    x = [_ZERO] * n
    for k, (j, s) in enumerate(cols):
        x[j] += s * res.x[k]
    return LPResult(res.status, tuple(x), res.objective, res.pivots)
