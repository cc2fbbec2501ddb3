"""CAT(1) tests for the 3-sphere ramified along Hopf circles.

A complex line through the origin of C^2 meets the unit 3-sphere in a Hopf
circle; the Hopf map sends that circle to one base point on the quotient
2-sphere.  The quotient carries curvature 4, so quotient distances are half
of the angles between unit vectors.  Ramifying the 3-sphere along n >= 2
Hopf circles gives a CAT(1) space exactly when no point of the 3-sphere is
more than pi/4 away from the circles, i.e. when the covering radius of the
base points is at most pi/4, i.e. when the origin of R^3 lies in the convex
hull of the base points.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy import optimize

from . import _kernels
from .arrangement import Arrangement, IncidenceData, incidence
from .cyclofield import CycloElement
from .errors import (
    DegenerateInput,
    DuplicateLines,
    TooFewLines,
    WrongCount,
    ZeroDirection,
)
from .exact_lp import OPTIMAL, linprog_max

QUARTER_PI = math.pi / 4
DEFAULT_TOL = 1e-9
GRID_TOL = 1e-6


@dataclass(frozen=True)
class ComplexLine2:
    """The complex line through 0 spanned by (d0, d1)."""

    d0: complex
    d1: complex
    exact: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "d0", complex(self.d0))
        object.__setattr__(self, "d1", complex(self.d1))
        if self.d0 == 0 and self.d1 == 0:
            raise ZeroDirection("direction (0, 0) does not span a line")

    @classmethod
    def from_exact(cls, a: CycloElement, b: CycloElement) -> "ComplexLine2":
        if a.is_zero() and b.is_zero():
            raise ZeroDirection("direction (0, 0) does not span a line")
        return cls(complex(a), complex(b), (a, b))

    @property
    def direction(self) -> np.ndarray:
        return np.array([self.d0, self.d1])

    def transformed(self, u: np.ndarray) -> "ComplexLine2":
        w = np.asarray(u) @ self.direction
        return ComplexLine2(w[0], w[1])


def _as_line(x) -> ComplexLine2:
    if isinstance(x, ComplexLine2):
        return x
    a, b = x
    if isinstance(a, CycloElement):
        return ComplexLine2.from_exact(a, b)
    return ComplexLine2(a, b)


def base_point(line) -> np.ndarray:
    """Hopf image (2 Re(conj(w0) w1), 2 Im(conj(w0) w1), |w0|^2 - |w1|^2) / |w|^2."""
    line = _as_line(line)
    w0, w1 = line.d0, line.d1
    scale = max(abs(w0), abs(w1))
    w0, w1 = w0 / scale, w1 / scale
    h = w0.conjugate() * w1
    norm2 = abs(w0) ** 2 + abs(w1) ** 2
    v = np.array([2 * h.real, 2 * h.imag, abs(w0) ** 2 - abs(w1) ** 2]) / norm2
    return v / np.linalg.norm(v)


def lift(point: Sequence[float]) -> ComplexLine2:
    """A complex line whose base point is ``point`` (inverse Hopf map)."""
    x, y, z = (float(c) for c in point)
    if z > -1 + 1e-15:
        w0 = math.sqrt((1 + z) / 2)
        return ComplexLine2(w0, complex(x, y) / (2 * w0))
    return ComplexLine2(0, 1)


def sphere_angle(p, q) -> float:
    p, q = np.asarray(p, float), np.asarray(q, float)
    return float(math.atan2(np.linalg.norm(np.cross(p, q)), float(p @ q)))


def quotient_distance(p, q) -> float:
    """Distance on the curvature-4 quotient sphere between unit vectors."""
    return sphere_angle(p, q) / 2


def line_angle(l1, l2) -> float:
    """Hermitian angle arccos(|<d1, d2>| / (|d1| |d2|)), in [0, pi/2]."""
    l1, l2 = _as_line(l1), _as_line(l2)
    u = l1.direction / np.linalg.norm(l1.direction)
    v = l2.direction / np.linalg.norm(l2.direction)
    inner = abs(np.vdot(u, v))
    wedge = abs(u[0] * v[1] - u[1] * v[0])
    return float(math.atan2(wedge, inner))


# --- configurations ---------------------------------------------------------

@dataclass(frozen=True)
class HopfConfig:
    base_points: np.ndarray = field(compare=False)

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.base_points, dtype=float))
        if pts.shape[1] != 3 or len(pts) == 0:
            raise DegenerateInput("base points must be a non-empty (n, 3) array")
        norms = np.linalg.norm(pts, axis=1)
        if np.any(np.abs(norms - 1) > 1e-12):
            raise DegenerateInput("base points must be unit vectors")
        pts.setflags(write=False)
        object.__setattr__(self, "base_points", pts)

    @classmethod
    def from_lines(cls, lines: Iterable) -> "HopfConfig":
        return cls(np.array([base_point(ln) for ln in lines]))

    def __len__(self):
        return len(self.base_points)


def _config(x) -> HopfConfig:
    if isinstance(x, HopfConfig):
        return x
    x = list(x)
    if x and not isinstance(x[0], ComplexLine2) and len(x[0]) == 3:
        return HopfConfig(np.array(x, dtype=float))  # already base points
    return HopfConfig.from_lines(x)


class HullStatus(enum.Enum):
    INSIDE = "Inside"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class HullReport:
    status: HullStatus
    separation: Fraction  # max_u min_i u.p_i over the box |u_k| <= 1
    inradius: Optional[Fraction]  # min over axes of the octahedron reach, if origin in hull


def hull_report(config, tol: float = DEFAULT_TOL) -> HullReport:
    """Exact LP decision of where the origin sits relative to conv(base points).

    The base points are taken at their exact binary values, so the only
    tolerance is the declared boundary band.
    """
    pts = [[Fraction(float(c)) for c in p] for p in _config(config).base_points]
    # separation: max t  s.t.  t - u.p_i <= 0,  -1 <= u_k <= 1
    A_ub, b_ub = [], []
    for p in pts:
        A_ub.append([-p[0], -p[1], -p[2], 1])
        b_ub.append(0)
    for k in range(3):
        e = [0, 0, 0, 0]
        e[k] = 1
        A_ub.append(e)
        b_ub.append(1)
        e = [0, 0, 0, 0]
        e[k] = -1
        A_ub.append(e)
        b_ub.append(1)
    res = linprog_max([0, 0, 0, 1], A_ub, b_ub, free=[True] * 4)
    sep = res.objective
    if sep > tol:
        return HullReport(HullStatus.OUTSIDE, sep, None)
    # interior test: +-r e_k in conv(P) for all six signed axes
    n = len(pts)
    reach = None
    for k in range(3):
        for sign in (1, -1):
            A_eq = [[p[j] for p in pts] + [-sign if j == k else 0] for j in range(3)]
            A_eq.append([1] * n + [0])
            b_eq = [0, 0, 0, 1]
            r = linprog_max([0] * n + [1], (), (), A_eq, b_eq)
            value = r.objective if r.status == OPTIMAL else Fraction(0)
            reach = value if reach is None else min(reach, value)
    status = HullStatus.INSIDE if reach > tol and sep <= 0 else HullStatus.BOUNDARY
    return HullReport(status, sep, reach)


def hull_contains_origin(config, tol: float = DEFAULT_TOL) -> HullStatus:
    return hull_report(config, tol).status


# --- covering radius --------------------------------------------------------

def farthest_point(config) -> tuple[float, np.ndarray]:
    """(covering radius in the quotient metric, a farthest unit vector)."""
    pts = _config(config).base_points
    angle, direction = _kernels.candidate_farthest(pts)
    return angle / 2, direction


def covering_radius(config) -> float:
    return farthest_point(config)[0]


def fibonacci_sphere(n: int) -> np.ndarray:
    k = np.arange(n) + 0.5
    z = 1 - 2 * k / n
    r = np.sqrt(1 - z * z)
    phi = math.pi * (3 - math.sqrt(5)) * k
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def _tangent_basis(q):
    e = np.eye(3)[np.argmin(np.abs(q))]
    t1 = np.cross(q, e)
    t1 /= np.linalg.norm(t1)
    return t1, np.cross(q, t1)


def _polish(q, val, pts) -> tuple:
    """Local solve of min c s.t. p_i.x <= c, |x| = 1, started at q.

    The farthest point usually sits on a crease where several distances
    tie, which grid zooming approaches only slowly.
    """
    res = optimize.minimize(
        lambda x: x[3], np.append(q, math.cos(val)), method="SLSQP",
        constraints=[{"type": "ineq", "fun": lambda x: x[3] - pts @ x[:3]},
                     {"type": "eq", "fun": lambda x: x[:3] @ x[:3] - 1}],
        options={"ftol": 1e-15, "maxiter": 200},
    )
    x = res.x[:3] / np.linalg.norm(res.x[:3])
    polished = float(_kernels.min_angle_field(pts, x[None, :])[0])
    return (x, polished) if polished > val else (q, val)


def grid_covering_radius(config, n_grid: int = 6000, seeds: int = 12, tol: float = 1e-9):
    """Covering radius by dense sampling plus zoom refinement (cross-check)."""
    pts = _config(config).base_points
    grid = fibonacci_sphere(n_grid)
    vals = _kernels.min_angle_field(pts, grid)
    order = np.argsort(-vals)[:seeds]
    spacing = math.sqrt(4 * math.pi / n_grid)
    offsets = np.linspace(-5, 5, 11)
    ii, jj = np.meshgrid(offsets, offsets, indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    best_val, best_q = -1.0, None
    for idx in order:
        q = grid[idx]
        val = vals[idx]
        h = spacing
        while h > tol:
            t1, t2 = _tangent_basis(q)
            cand = q + h * (ii[:, None] * t1 + jj[:, None] * t2)
            cand /= np.linalg.norm(cand, axis=1)[:, None]
            cv = _kernels.min_angle_field(pts, cand)
            k = int(np.argmax(cv))
            if cv[k] >= val:
                q, val = cand[k], cv[k]
            h /= 3
        q, val = _polish(q, val, pts)
        if val > best_val:
            best_val, best_q = float(val), q
    return best_val / 2, best_q


# --- verdicts ---------------------------------------------------------------

class CatStatus(enum.Enum):
    CAT1 = "Cat1"
    CAT1_BOUNDARY = "Cat1Boundary"
    NOT_CAT1 = "NotCat1"

    @property
    def is_cat1(self) -> bool:
        return self is not CatStatus.NOT_CAT1


@dataclass(frozen=True)
class CatVerdict:
    status: CatStatus
    covering_radius: float
    witness: Optional[np.ndarray] = field(compare=False)
    hull: HullReport = field(compare=False, default=None)

    @property
    def witness_line(self) -> Optional[ComplexLine2]:
        return None if self.witness is None else lift(self.witness)


def _distinct(lines: list, tol: float) -> None:
    pts = [base_point(ln) for ln in lines]
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if sphere_angle(pts[i], pts[j]) <= tol:
                raise DuplicateLines(f"lines {i} and {j} coincide")


def cat1_verdict(lines: Sequence, tol: float = DEFAULT_TOL) -> CatVerdict:
    """CAT(1) decision for the ramification along the Hopf circles of ``lines``."""
    lines = [_as_line(ln) for ln in lines]
    if len(lines) < 2:
        raise TooFewLines("the Hopf-circle criterion needs at least two lines")
    _distinct(lines, tol)
    config = HopfConfig.from_lines(lines)
    hull = hull_report(config, tol)
    radius, witness = farthest_point(config)
    # the two decision paths must agree up to the tolerance band
    if hull.status is HullStatus.OUTSIDE and radius < QUARTER_PI - tol:
        raise DegenerateInput("hull test and covering radius disagree (Outside)")
    if hull.status is HullStatus.INSIDE and radius > QUARTER_PI + tol:
        raise DegenerateInput("hull test and covering radius disagree (Inside)")
    status = {
        HullStatus.OUTSIDE: CatStatus.NOT_CAT1,
        HullStatus.BOUNDARY: CatStatus.CAT1_BOUNDARY,
        HullStatus.INSIDE: CatStatus.CAT1,
    }[hull.status]
    return CatVerdict(status, radius, witness if status is CatStatus.NOT_CAT1 else None, hull)


# --- local configurations of an arrangement ---------------------------------

@dataclass(frozen=True)
class LocalConfig:
    point: int
    multiplicity: int
    lines: tuple
    config: HopfConfig
    verdict: CatVerdict


def tangent_directions(arr: Arrangement, inc: IncidenceData, idx: int) -> list:
    """Directions at a multiple point of the incident lines, in C^2 = x^perp.

    For the point x and a line with coefficients l through it, the tangent
    direction is the vector orthogonal (Hermitian) to x lying on the line,
    expressed in an orthonormal basis of the complement of x.
    """
    pt = inc.points[idx]
    x = np.array([complex(c) for c in pt.point.coords])
    x = x / np.linalg.norm(x)
    # orthonormal basis of the Hermitian complement of x
    e = np.eye(3)[np.argmin(np.abs(x))].astype(complex)
    b1 = e - np.vdot(x, e) * x
    b1 /= np.linalg.norm(b1)
    b2 = np.cross(np.conj(x), np.conj(b1))  # orthogonal to x and b1
    b2 /= np.linalg.norm(b2)
    out = []
    for k in pt.lines:
        ell = np.array([complex(c) for c in arr.lines[k].coords])
        v = np.cross(ell, np.conj(x))  # ell.v = 0 and <v, x> = 0
        out.append(ComplexLine2(np.vdot(b1, v), np.vdot(b2, v)))
    return out


def local_configs(arr: Arrangement, inc: Optional[IncidenceData] = None, tol: float = DEFAULT_TOL) -> list:
    if inc is None:
        inc = incidence(arr)
    out = []
    for idx, pt in enumerate(inc.points):
        lines = tangent_directions(arr, inc, idx)
        config = HopfConfig.from_lines(lines)
        out.append(LocalConfig(idx, pt.multiplicity, tuple(lines), config, cat1_verdict(lines, tol)))
    return out


# --- three-point checks -----------------------------------------------------

def three_point_s2_check(x, y, z, tol: float = DEFAULT_TOL) -> bool:
    """Perimeter of the triangle xyz on the unit sphere equals 2 pi."""
    pts = [np.asarray(p, dtype=float) for p in (x, y, z)]
    for p in pts:
        if p.shape != (3,) or abs(np.linalg.norm(p) - 1) > 1e-12:
            raise DegenerateInput("expected unit vectors in R^3")
    for i in range(3):
        for j in range(i + 1, 3):
            if sphere_angle(pts[i], pts[j]) <= tol:
                raise DegenerateInput("points must be distinct")
    perimeter = sum(sphere_angle(pts[i], pts[(i + 1) % 3]) for i in range(3))
    return abs(perimeter - 2 * math.pi) <= tol


def three_fiber_check(config, tol: float = DEFAULT_TOL) -> bool:
    """Quotient-metric perimeter of three base points equals pi."""
    pts = _config(config).base_points
    if len(pts) != 3:
        raise WrongCount(f"expected exactly three base points, got {len(pts)}")
    for i in range(3):
        for j in range(i + 1, 3):
            if sphere_angle(pts[i], pts[j]) <= tol:
                raise DegenerateInput("base points must be distinct")
    perimeter = sum(quotient_distance(pts[i], pts[(i + 1) % 3]) for i in range(3))
    return abs(perimeter - math.pi) <= tol
