"""Weight systems for non-negatively curved polyhedral Kaehler metrics on CP^2.

Given a line arrangement, a weight vector z (one entry per line, the metric
has cone angle 2*pi*(1 - z_i) around line i) is admissible when

* 0 < z_k < 1 for every line,
* sum_k b_jk z_k = 1 for every line j, and sum_k z_k = 3,
* alpha_x = 1 - (1/2) * sum_{k : x on line k} z_k > 0 at every point of
  multiplicity >= 3,

where b is the symmetric matrix built by :func:`build_b_matrix`.  Everything
here is exact rational arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .arrangement import Arrangement, IncidenceData, hirzebruch_check, incidence
from .errors import InternalContradiction, LengthMismatch
from .exact_lp import INFEASIBLE, OPTIMAL, UNBOUNDED, linprog_max

BMatrix = tuple  # n x n tuple of tuples of Fraction


def build_b_matrix(inc: IncidenceData) -> BMatrix:
    n = inc.n_lines
    b = [[Fraction(0)] * n for _ in range(n)]
    for p in inc.points:
        if p.multiplicity == 2:
            i, j = p.lines
            b[i][j] = b[j][i] = Fraction(1)
    for j, pts in enumerate(inc.per_line):
        heavy = sum(1 for idx in pts if inc.points[idx].multiplicity >= 3)
        b[j][j] = Fraction(heavy - 1)
    return tuple(tuple(row) for row in b)


def _weights(z, n: int) -> tuple:
    z = tuple(Fraction(v) for v in z)
    if len(z) != n:
        raise LengthMismatch(f"weight vector has {len(z)} entries, arrangement has {n} lines")
    return z


# --- alpha values ---------------------------------------------------------

@dataclass(frozen=True)
class AlphaEntry:
    point: int
    multiplicity: int
    alpha: Fraction

    @property
    def fiber_length(self) -> Fraction:
        """Length of the circle fiber in the link, in units of pi."""
        return 2 * self.alpha


AlphaReport = tuple  # of AlphaEntry


def alphas(inc: IncidenceData, z: Sequence) -> AlphaReport:
    z = _weights(z, inc.n_lines)
    out = []
    for idx, p in enumerate(inc.points):
        if p.multiplicity >= 3:
            out.append(AlphaEntry(idx, p.multiplicity, 1 - sum(z[k] for k in p.lines) / 2))
    return tuple(out)


def cone_angles(z: Sequence) -> tuple:
    """Cone angle around each line, in units of pi."""
    return tuple(2 * (1 - Fraction(v)) for v in z)


# --- constraint rows shared by checker, solver and verifier ---------------

@dataclass(frozen=True)
class Row:
    ident: str
    z: tuple  # coefficients of z
    s: Fraction  # coefficient of the slack variable
    rhs: Fraction
    kind: str  # "eq" or "le"


def equality_rows(bm: BMatrix) -> list:
    n = len(bm)
    rows = [Row(f"gb[{j}]", tuple(bm[j]), Fraction(0), Fraction(1), "eq") for j in range(n)]
    rows.append(Row("sum", (Fraction(1),) * n, Fraction(0), Fraction(3), "eq"))
    return rows


def inequality_rows(inc: IncidenceData) -> list:
    """Strict conditions written as  a.z + s <= h  (margin >= s)."""
    n = inc.n_lines
    one, zero = Fraction(1), Fraction(0)
    rows = []
    for k in range(n):
        a = [zero] * n
        a[k] = -one
        rows.append(Row(f"lower[{k}]", tuple(a), one, zero, "le"))
    for k in range(n):
        a = [zero] * n
        a[k] = one
        rows.append(Row(f"upper[{k}]", tuple(a), one, one, "le"))
    half = Fraction(1, 2)
    for idx, p in enumerate(inc.points):
        if p.multiplicity >= 3:
            a = [zero] * n
            for k in p.lines:
                a[k] = half
            rows.append(Row(f"alpha[{idx}]", tuple(a), one, one, "le"))
    return rows


def constraint_rows(inc: IncidenceData) -> list:
    return equality_rows(build_b_matrix(inc)) + inequality_rows(inc)


# --- condition checking ---------------------------------------------------

@dataclass(frozen=True)
class Condition:
    ident: str
    group: str  # "i", "ii" or "iv"
    value: Fraction  # margin for strict inequalities, residual for equalities
    strict: bool

    @property
    def ok(self) -> bool:
        return self.value > 0 if self.strict else self.value == 0


@dataclass(frozen=True)
class ConditionReport:
    conditions: tuple

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.conditions)

    def group_ok(self, group: str) -> bool:
        return all(c.ok for c in self.conditions if c.group == group)

    @property
    def min_margin(self) -> Optional[Fraction]:
        margins = [c.value for c in self.conditions if c.strict]
        return min(margins) if margins else None

    def failures(self) -> list:
        return [c for c in self.conditions if not c.ok]


def check_weights(arr: Arrangement, z: Sequence, inc: Optional[IncidenceData] = None) -> ConditionReport:
    """Evaluate every admissibility condition on ``z`` with exact margins."""
    if inc is None:
        inc = incidence(arr)
    n = inc.n_lines
    z = _weights(z, n)
    bm = build_b_matrix(inc)
    conds = []
    for k in range(n):
        conds.append(Condition(f"lower[{k}]", "i", z[k], True))
        conds.append(Condition(f"upper[{k}]", "i", 1 - z[k], True))
    for j in range(n):
        conds.append(Condition(f"gb[{j}]", "ii", sum(bm[j][k] * z[k] for k in range(n)) - 1, False))
    conds.append(Condition("sum", "ii", sum(z) - 3, False))
    for a in alphas(inc, z):
        conds.append(Condition(f"alpha[{a.point}]", "iv", a.alpha, True))
    return ConditionReport(tuple(conds))


# --- certificates ---------------------------------------------------------

@dataclass(frozen=True)
class MetricCertificate:
    z: tuple
    alphas: AlphaReport
    slack: Fraction
    cone_angles: tuple

    feasible = True


@dataclass(frozen=True)
class InfeasibilityCertificate:
    """Multipliers proving that no weight vector satisfies the strict system.

    Equality multipliers are free, inequality multipliers nonnegative; the
    combination has zero z-coefficients and unit slack coefficient, so every
    point of the closed system has slack <= ``bound`` <= 0.
    """

    multipliers: dict  # constraint identifier -> Fraction
    bound: Fraction
    optimum: Optional[Fraction] = None  # max slack of the closed system, None if empty

    feasible = False


WeightSolution = Union[MetricCertificate, InfeasibilityCertificate]


def _make_certificate(inc: IncidenceData, z: tuple, slack: Fraction) -> MetricCertificate:
    return MetricCertificate(z, alphas(inc, z), slack, cone_angles(z))


def _max_slack(inc: IncidenceData, rows: list):
    """Maximise s with w_k = z_k - s >= 0 substituted (keeps the LP small)."""
    n = inc.n_lines
    # variables: w_0..w_{n-1} >= 0, s free
    def convert(row: Row):
        total = sum(row.z)
        # a.z + c s = a.(w + s) + c s
        return list(row.z) + [total + row.s]

    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for row in rows:
        if row.ident.startswith("lower["):
            continue  # becomes w_k >= 0
        if row.kind == "eq":
            A_eq.append(convert(row))
            b_eq.append(row.rhs)
        else:
            A_ub.append(convert(row))
            b_ub.append(row.rhs)
    c = [0] * n + [1]
    res = linprog_max(c, A_ub, b_ub, A_eq, b_eq, free=[False] * n + [True])
    if res.status != OPTIMAL:
        return res.status, None, None
    s = res.x[n]
    z = tuple(w + s for w in res.x[:n])
    return OPTIMAL, z, s


def _dual_certificate(rows: list, n: int) -> InfeasibilityCertificate:
    """Search multipliers with zero z-part, unit s-part and bound <= 0.

    Minimises the bound, so when the closed system is feasible the bound is
    its optimal slack (strong duality).
    """
    m = len(rows)
    # variables: one multiplier per row (free for equalities)
    free = [r.kind == "eq" for r in rows]
    A_eq = [[r.z[k] for r in rows] for k in range(n)]
    b_eq = [0] * n
    A_eq.append([r.s for r in rows])
    b_eq.append(1)
    A_ub = [[r.rhs for r in rows]]
    b_ub = [0]
    c = [-r.rhs for r in rows]  # maximise -bound
    res = linprog_max(c, A_ub, b_ub, A_eq, b_eq, free=free)
    if res.x is None:
        raise InternalContradiction("no infeasibility certificate although the LP optimum is <= 0")
    mult = {r.ident: v for r, v in zip(rows, res.x) if v}
    bound = sum(r.rhs * v for r, v in zip(rows, res.x))
    return InfeasibilityCertificate(mult, bound)


def solve_weights(arr: Arrangement, inc: Optional[IncidenceData] = None) -> WeightSolution:
    """Decide the strict system by maximising the common margin s exactly."""
    if inc is None:
        inc = incidence(arr)
    rows = constraint_rows(inc)
    status, z, s = _max_slack(inc, rows)
    if status == OPTIMAL and s > 0:
        cert = _make_certificate(inc, z, s)
        report = check_weights(arr, z, inc)
        if not report.ok or report.min_margin < s:
            raise InternalContradiction("solver returned weights that fail the exact check")
        return cert
    if status == UNBOUNDED:
        raise InternalContradiction("max-slack LP cannot be unbounded (s <= 1/2)")
    cert = _dual_certificate(rows, inc.n_lines)
    return InfeasibilityCertificate(cert.multipliers, cert.bound, s if status == OPTIMAL else None)


def verify_certificate(arr: Arrangement, cert: WeightSolution) -> bool:
    """Re-check a certificate from scratch with exact arithmetic."""
    inc = incidence(arr)
    n = inc.n_lines
    if isinstance(cert, MetricCertificate):
        if len(cert.z) != n or cert.slack <= 0:
            return False
        report = check_weights(arr, cert.z, inc)
        if not report.ok or report.min_margin < cert.slack:
            return False
        return cert.alphas == alphas(inc, cert.z) and cert.cone_angles == cone_angles(cert.z)
    if isinstance(cert, InfeasibilityCertificate):
        rows = {r.ident: r for r in constraint_rows(inc)}
        zc = [Fraction(0)] * n
        sc = Fraction(0)
        bound = Fraction(0)
        for ident, lam in cert.multipliers.items():
            row = rows.get(ident)
            if row is None:
                return False
            lam = Fraction(lam)
            if row.kind == "le" and lam < 0:
                return False
            for k in range(n):
                zc[k] += lam * row.z[k]
            sc += lam * row.s
            bound += lam * row.rhs
        return all(v == 0 for v in zc) and sc == 1 and bound <= 0 and bound == cert.bound
    return False


# --- quadratic diagnostic -------------------------------------------------

def quadratic_residual(inc: IncidenceData, z: Sequence) -> Fraction:
    """sum over heavy x of (alpha_x - 1)^2  -  sum_j z_j^2 b_jj  -  3/2."""
    z = _weights(z, inc.n_lines)
    bm = build_b_matrix(inc)
    first = sum((a.alpha - 1) ** 2 for a in alphas(inc, z))
    second = sum(z[j] ** 2 * bm[j][j] for j in range(inc.n_lines))
    return first - second - Fraction(3, 2)


# --- asphericity ----------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    aspherical: bool
    reason: Optional[str]  # "LP", "TriangleSpecialCase" or None
    solution: WeightSolution = field(repr=False)

    @property
    def label(self) -> str:
        return f"Aspherical({self.reason})" if self.aspherical else "NoCertificate"


def aspherical_verdict(arr: Arrangement, inc: Optional[IncidenceData] = None) -> Verdict:
    if inc is None:
        inc = incidence(arr)
    sol = solve_weights(arr, inc)
    if sol.feasible:
        return Verdict(True, "LP", sol)
    hz = hirzebruch_check(arr, inc)
    if hz.holds and any(p.multiplicity >= 2 * hz.n for p in inc.points):
        # a line missing the concurrent point meets >= 2n others, so n + 1 >= 2n
        if len(arr.lines) == 3 and all(p.multiplicity == 2 for p in inc.points):
            return Verdict(True, "TriangleSpecialCase", sol)
        raise InternalContradiction(
            "Hirzebruch arrangement with a point of multiplicity >= 2n is not three generic lines"
        )
    return Verdict(False, None, sol)
