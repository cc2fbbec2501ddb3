"""Doubled spherical triangles and alpha-extendability.

Triangles are given by their angles; all geometry is done on the unit sphere
and lengths are rescaled by 1/sqrt(curvature) when reported.  The double of a
convex triangle is two copies glued along the boundary.  Each copy is convex
in the double, so the distance from a point of one face to a vertex is the
spherical distance inside that face; the unfolding check below tests this on
random samples.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from scipy import optimize

from . import _kernels
from .errors import DegenerateTriangle, EmptySingularSet, InvalidParameters

QUARTER_PI = math.pi / 4
DEFAULT_TOL = 1e-9
REFINE_TOL = 1e-6
_COS_TOL = 1e-12

Number = Union[int, float, Fraction, str]


def _as_float(x: Number) -> float:
    if isinstance(x, str):
        x = Fraction(x)
    return float(x)


@dataclass(frozen=True)
class SphTriangle:
    angles: tuple
    curvature: int = 1

    def __post_init__(self):
        angles = tuple(float(a) for a in self.angles)
        if len(angles) != 3:
            raise DegenerateTriangle("a triangle has three angles")
        if self.curvature not in (1, 4):
            raise DegenerateTriangle(f"curvature must be 1 or 4, got {self.curvature}")
        if any(not (0 < a < math.pi) for a in angles):
            raise DegenerateTriangle(f"angles must lie in (0, pi): {angles}")
        if sum(angles) <= math.pi:
            raise DegenerateTriangle("angle sum must exceed pi")
        object.__setattr__(self, "angles", angles)

    @property
    def scale(self) -> float:
        """Factor taking unit-sphere lengths to the intrinsic metric."""
        return 1 / math.sqrt(self.curvature)

    def side_cosines(self) -> tuple:
        """Cosines of the unit-sphere sides; side k is opposite angle k."""
        A = self.angles
        out = []
        for k in range(3):
            a, b, c = A[k], A[(k + 1) % 3], A[(k + 2) % 3]
            out.append((math.cos(a) + math.cos(b) * math.cos(c)) / (math.sin(b) * math.sin(c)))
        return tuple(out)

    def unit_sides(self) -> tuple:
        cosines = self.side_cosines()
        for k, c in enumerate(cosines):
            if c <= -1 + _COS_TOL:
                raise DegenerateTriangle(f"side {k} reaches length pi (cos = {c:.15g})")
            if c > 1 + _COS_TOL:
                raise DegenerateTriangle(f"side {k} has cosine {c:.15g} > 1")
        return tuple(math.acos(min(1.0, c)) for c in cosines)

    def vertices(self) -> np.ndarray:
        """Unit vectors: A at the pole, B in the xz-plane, C with positive y."""
        a, b, c = self.unit_sides()
        A = self.angles[0]
        va = np.array([0.0, 0.0, 1.0])
        vb = np.array([math.sin(c), 0.0, math.cos(c)])
        vc = np.array([math.sin(b) * math.cos(A), math.sin(b) * math.sin(A), math.cos(b)])
        return np.array([va, vb, vc])


def sides_from_angles(t: SphTriangle) -> tuple:
    """Side lengths (a, b, c) in the intrinsic metric; side a faces angle A."""
    return tuple(s * t.scale for s in t.unit_sides())


def angles_from_sides(sides: Sequence[float], curvature: int = 1) -> tuple:
    """Inverse of :func:`sides_from_angles` via the spherical law of cosines."""
    s = [float(x) * math.sqrt(curvature) for x in sides]
    out = []
    for k in range(3):
        a, b, c = s[k], s[(k + 1) % 3], s[(k + 2) % 3]
        cos_a = (math.cos(a) - math.cos(b) * math.cos(c)) / (math.sin(b) * math.sin(c))
        out.append(math.acos(max(-1.0, min(1.0, cos_a))))
    return tuple(out)


@dataclass(frozen=True)
class DoubledTriangle:
    triangle: SphTriangle
    distinguished_vertex: int = 0

    @property
    def cone_angles(self) -> tuple:
        return tuple(2 * a for a in self.triangle.angles)

    def singular_vertices(self, tol: float = DEFAULT_TOL) -> tuple:
        return tuple(k for k, c in enumerate(self.cone_angles) if abs(c - 2 * math.pi) > tol)

    def sides(self) -> tuple:
        return sides_from_angles(self.triangle)


def counterexample_angles(n: int, eps: Number) -> tuple:
    """(pi/n, (n+1)pi/(2n) - eps, (n+1)pi/(2n) - eps)."""
    big = (n + 1) * math.pi / (2 * n) - _as_float(eps)
    return (math.pi / n, big, big)


def counterexample_triangle(n: int, eps: Number) -> DoubledTriangle:
    """Curvature-4 doubled triangle with one small angle pi/n at vertex 0.

    The two large angles sit just below (n+1)pi/(2n); at exactly that value
    the triangle collapses to a lune, and above it no spherical triangle
    exists.  Valid for 0 < eps < pi/n.
    """
    if not isinstance(n, int) or n < 2:
        raise InvalidParameters(f"n must be an integer >= 2, got {n!r}")
    try:
        e = _as_float(eps)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidParameters(f"bad eps {eps!r}") from exc
    if not e > 0:
        raise InvalidParameters(f"eps must be positive, got {eps!r}")
    try:
        t = SphTriangle(counterexample_angles(n, e), curvature=4)
        t.unit_sides()
    except DegenerateTriangle as exc:
        raise InvalidParameters(f"no spherical triangle for n={n}, eps={eps}: {exc}") from exc
    return DoubledTriangle(t, distinguished_vertex=0)


# --- distance to the singular set -------------------------------------------

def _angle(p, q) -> float:
    return math.atan2(float(np.linalg.norm(np.cross(p, q))), float(np.dot(p, q)))


def _unit(v) -> Optional[np.ndarray]:
    nrm = float(np.linalg.norm(v))
    return None if nrm < 1e-14 else np.asarray(v, dtype=float) / nrm


def _in_triangle(p, verts, tol=1e-12) -> bool:
    for k in range(3):
        nrm = np.cross(verts[k], verts[(k + 1) % 3])
        if float(nrm @ p) < -tol * float(np.linalg.norm(nrm)):
            return False
    return True


def _nearest(p, targets) -> float:
    return min(_angle(p, t) for t in targets)


def _candidates(verts, targets) -> list:
    """Points where the nearest-target distance can peak on the face."""
    cands = [v for v in verts]
    # edge points: critical points of the distance to one target, and
    # points equidistant from two targets
    for k in range(3):
        p, q = verts[k], verts[(k + 1) % 3]
        normal = _unit(np.cross(p, q))
        for t in targets:
            proj = _unit(t - (t @ normal) * normal)
            if proj is not None:
                cands.extend([proj, -proj])
        for i in range(len(targets)):
            for j in range(i + 1, len(targets)):
                d = _unit(np.cross(normal, targets[i] - targets[j]))
                if d is not None:
                    cands.extend([d, -d])
    # interior points: antipodes, antipodal midpoints, circumcentres
    for t in targets:
        cands.append(-t)
    for i in range(len(targets)):
        for j in range(i + 1, len(targets)):
            m = _unit(targets[i] + targets[j])
            if m is not None:
                cands.append(-m)
    if len(targets) == 3:
        cc = _unit(np.cross(targets[1] - targets[0], targets[2] - targets[0]))
        if cc is not None:
            cands.extend([cc, -cc])
    return [c for c in cands if _in_triangle(c, verts)]


def _orient(verts) -> np.ndarray:
    if float(np.linalg.det(verts)) < 0:
        return verts[[0, 2, 1]]
    return verts


def _fibonacci_sphere(n: int) -> np.ndarray:
    k = np.arange(n) + 0.5
    z = 1 - 2 * k / n
    r = np.sqrt(1 - z * z)
    phi = math.pi * (3 - math.sqrt(5)) * k
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def _coarse_samples(verts, res: int) -> np.ndarray:
    """Barycentric grid plus uniform sphere points, all inside the face."""
    i, j = np.meshgrid(np.arange(res + 1), np.arange(res + 1), indexing="ij")
    keep = (i + j) <= res
    lam = np.column_stack([i[keep], j[keep], res - i[keep] - j[keep]]) / res
    pts = lam @ verts
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    sphere = _fibonacci_sphere(40 * res)
    normals = np.array([np.cross(verts[k], verts[(k + 1) % 3]) for k in range(3)])
    inside = np.all(sphere @ normals.T >= 0, axis=1)
    return np.concatenate([pts, sphere[inside]])


def _tangent_basis(q):
    e = np.eye(3)[np.argmin(np.abs(q))]
    t1 = np.cross(q, e)
    t1 /= np.linalg.norm(t1)
    return t1, np.cross(q, t1)


def sampled_max_distance(verts, targets, res: int = 120, seeds: int = 6,
                         tol: float = 1e-9) -> tuple:
    """Dense sampling with zoom refinement; returns (unit-sphere angle, point).

    Seeds are the barycentric-grid maximum plus the best well-separated
    samples of a mixed barycentric/uniform grid.  Each seed is refined on an
    11 x 11 tangent-plane window clipped to the face, then polished by a
    constrained local solve; edges are walked separately.
    """
    verts = np.ascontiguousarray(verts, dtype=float)
    targets = np.ascontiguousarray(targets, dtype=float)
    normals = np.array([np.cross(verts[k], verts[(k + 1) % 3]) for k in range(3)])
    v0, l1, l2 = _kernels.triangle_sample_max(verts, targets, res)
    first = l1 * verts[0] + l2 * verts[1] + (1 - l1 - l2) * verts[2]
    pts = _coarse_samples(verts, res)
    vals = _kernels.min_angle_field(targets, pts)
    spacing = 4 * math.pi / res
    chosen = [first / np.linalg.norm(first)]
    starts = [v0]
    cos_sep = math.cos(spacing)
    for k in np.argsort(-vals):
        if np.all(np.array(chosen) @ pts[k] < cos_sep):
            chosen.append(pts[k])
            starts.append(float(vals[k]))
            if len(chosen) > seeds:
                break
    offsets = np.linspace(-5, 5, 11)
    ii, jj = np.meshgrid(offsets, offsets, indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    best_val, best_q = -1.0, None
    for q, val in zip(chosen, starts):
        h = spacing / 4
        while h > tol:
            t1, t2 = _tangent_basis(q)
            cand = q + h * (ii[:, None] * t1 + jj[:, None] * t2)
            cand /= np.linalg.norm(cand, axis=1)[:, None]
            cand = cand[np.all(cand @ normals.T >= 0, axis=1)]
            if len(cand):
                cv = _kernels.min_angle_field(targets, cand)
                k = int(np.argmax(cv))
                if cv[k] >= val:
                    q, val = cand[k], float(cv[k])
            h /= 3
        q2, v2 = _polish(q, targets, normals)
        if v2 > val:
            q, val = q2, v2
        if val > best_val:
            best_val, best_q = val, q
    # boundary maxima: the clipped window cannot hug an edge, so walk each
    # edge separately
    for k in range(3):
        val, q = _edge_max(verts[k], verts[(k + 1) % 3], targets, 4 * res, tol)
        if val > best_val:
            best_val, best_q = val, q
    return best_val, best_q


def _polish(q, targets, normals) -> tuple:
    """Epigraph form max t s.t. dist(p, target_i) >= t, p in the face.

    Grid search stalls on creases where two distances tie and the climb
    along the crease is shallow; a constrained local solve does not.
    """
    t1, t2 = _tangent_basis(q)

    def point(x):
        p = q + x[0] * t1 + x[1] * t2
        return p / np.linalg.norm(p)

    def dist_gap(x):
        p = point(x)
        return np.arctan2(np.linalg.norm(np.cross(p, targets), axis=1), targets @ p) - x[2]

    def inside(x):
        return normals @ point(x)

    start = np.array([0.0, 0.0, _nearest(q, targets)])
    res = optimize.minimize(
        lambda x: -x[2], start, method="SLSQP",
        constraints=[{"type": "ineq", "fun": dist_gap}, {"type": "ineq", "fun": inside}],
        options={"ftol": 1e-15, "maxiter": 200},
    )
    p = point(res.x)
    if np.all(normals @ p >= 0):
        return p, _nearest(p, targets)
    return q, -1.0


def _slerp(p, q, ts):
    theta = _angle(p, q)
    ts = np.asarray(ts, dtype=float)
    pts = (np.sin((1 - ts) * theta)[:, None] * p + np.sin(ts * theta)[:, None] * q) / math.sin(theta)
    return pts / np.linalg.norm(pts, axis=1)[:, None]


def _edge_max(p, q, targets, n: int, tol: float) -> tuple:
    ts = np.linspace(0, 1, n + 1)
    vals = _kernels.min_angle_field(targets, _slerp(p, q, ts))
    k = int(np.argmax(vals))
    t, val = ts[k], float(vals[k])
    h = 1.0 / n
    length = _angle(p, q)
    while h * length > tol:
        local = np.clip(t + h * np.linspace(-5, 5, 11), 0, 1)
        lv = _kernels.min_angle_field(targets, _slerp(p, q, local))
        j = int(np.argmax(lv))
        if lv[j] >= val:
            t, val = local[j], float(lv[j])
        h /= 3
    return val, _slerp(p, q, [t])[0]


@dataclass(frozen=True)
class ExtendabilityReport:
    max_dist: float  # intrinsic distance of the farthest point to the singular set
    alpha: float
    extendable: bool
    witness: tuple  # unit vector of the farthest point
    witness_label: str
    margin: float  # max_dist - alpha; positive means not extendable
    grid_max: float

    @property
    def verdict(self) -> bool:
        return self.extendable


def alpha_extendable(d: DoubledTriangle, alpha: Number, singular_set: Iterable[int],
                     tol: float = DEFAULT_TOL, res: int = 120) -> ExtendabilityReport:
    """Is every point of the double within ``alpha`` of the chosen vertices?"""
    sing = sorted(set(int(k) for k in singular_set))
    if not sing:
        raise EmptySingularSet("singular set must contain at least one vertex")
    if any(k not in (0, 1, 2) for k in sing):
        raise InvalidParameters(f"vertex indices must be in 0..2, got {sing}")
    alpha = _as_float(alpha)
    verts = _orient(d.triangle.vertices())
    raw = d.triangle.vertices()
    targets = np.array([raw[k] for k in sing])
    best_val, best_p = -1.0, None
    for c in _candidates(verts, targets):
        v = _nearest(c, targets)
        if v > best_val:
            best_val, best_p = v, c
    grid_val, _ = sampled_max_distance(verts, targets, res)
    scale = d.triangle.scale
    label = "interior"
    for k in range(3):
        if _angle(best_p, raw[k]) < 1e-12:
            label = f"vertex {k}"
    max_dist = best_val * scale
    return ExtendabilityReport(
        max_dist=max_dist,
        alpha=alpha,
        extendable=max_dist <= alpha + tol,
        witness=tuple(float(x) for x in best_p),
        witness_label=label,
        margin=max_dist - alpha,
        grid_max=grid_val * scale,
    )


def unfolded_distance(p, target, verts) -> float:
    """Shortest distance from ``p`` to ``target`` that crosses one edge into
    the mirror face, or inf if no such straight path exists (unit sphere)."""
    best = math.inf
    for k in range(3):
        a, b = verts[k], verts[(k + 1) % 3]
        normal = _unit(np.cross(a, b))
        mirror = target - 2 * (target @ normal) * normal
        # where the great circle from p to the mirror image meets the edge
        x = _unit(np.cross(np.cross(p, mirror), normal))
        if x is None:
            continue
        for y in (x, -x):
            on_edge = abs(_angle(a, y) + _angle(y, b) - _angle(a, b)) < 1e-10
            on_path = abs(_angle(p, y) + _angle(y, mirror) - _angle(p, mirror)) < 1e-10
            if on_edge and on_path:
                best = min(best, _angle(p, y) + _angle(y, target))
    return best


# --- the counterexample -----------------------------------------------------

@dataclass(frozen=True)
class CounterexampleReport:
    n: int
    eps: float
    doubled: DoubledTriangle
    sides: tuple
    side_margins: tuple  # adjacent sides minus pi/4
    extendability: ExtendabilityReport

    @property
    def sides_ok(self) -> bool:
        return all(m > 0 for m in self.side_margins)

    @property
    def not_extendable(self) -> bool:
        return not self.extendability.extendable

    @property
    def confirmed(self) -> bool:
        return self.sides_ok and self.not_extendable


def verify_counterexample(n: int, eps: Number, res: int = 120,
                          tol: float = DEFAULT_TOL) -> CounterexampleReport:
    d = counterexample_triangle(n, eps)
    sides = d.sides()
    v = d.distinguished_vertex
    adjacent = [k for k in range(3) if k != v]  # sides opposite the other vertices
    margins = tuple(sides[k] - QUARTER_PI for k in adjacent)
    ext = alpha_extendable(d, QUARTER_PI, adjacent, tol=tol, res=res)
    return CounterexampleReport(n, _as_float(eps), d, sides, margins, ext)
