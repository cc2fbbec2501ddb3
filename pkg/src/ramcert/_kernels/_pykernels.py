"""Reference numpy implementations of the numeric kernels.

Angles are on the unit sphere and computed as atan2(|u x v|, u.v), which is
accurate near 0 and pi.
"""
import numpy as np

BACKEND = "python"

_EPS = 1e-14


def _angles(dirs, points):
    # dirs (m,3), points (n,3) -> (m,n)
    dots = dirs @ points.T
    crosses = np.linalg.norm(np.cross(dirs[:, None, :], points[None, :, :]), axis=2)
    return np.arctan2(crosses, dots)


def min_angle_field(points, dirs):
    """Angle from each direction to its nearest point."""
    points = np.ascontiguousarray(points, dtype=float)
    dirs = np.ascontiguousarray(dirs, dtype=float)
    out = np.empty(len(dirs))
    step = max(1, 200000 // max(len(points), 1))
    for s in range(0, len(dirs), step):
        out[s:s + step] = _angles(dirs[s:s + step], points).min(axis=1)
    return out


def _unit_rows(v):
    norms = np.linalg.norm(v, axis=1)
    keep = norms > _EPS
    return v[keep] / norms[keep, None]


def candidate_directions(points):
    """Every location where the nearest-point distance can peak."""
    p = np.ascontiguousarray(points, dtype=float)
    n = len(p)
    cands = [-p]
    if n >= 2:
        i, j = np.triu_indices(n, 1)
        mids = p[i] + p[j]
        norms = np.linalg.norm(mids, axis=1)
        ok = norms > 1e-12
        cands.append(-mids[ok] / norms[ok, None])
        # antipodal pairs: any direction perpendicular to the pair
        for a in i[~ok]:
            e = np.eye(3)[np.argmin(np.abs(p[a]))]
            perp = np.cross(p[a], e)
            cands.append((perp / np.linalg.norm(perp))[None, :])
    if n >= 3:
        idx = np.array([(a, b, c) for a in range(n) for b in range(a + 1, n) for c in range(b + 1, n)])
        for s in range(0, len(idx), 100000):
            blk = idx[s:s + 100000]
            pa, pb, pc = p[blk[:, 0]], p[blk[:, 1]], p[blk[:, 2]]
            cc = _unit_rows(np.cross(pb - pa, pc - pa))
            cands.append(cc)
            cands.append(-cc)
    return np.concatenate(cands, axis=0)


def candidate_farthest(points):
    """(angle, direction) maximising the distance to the nearest point."""
    cands = candidate_directions(points)
    vals = min_angle_field(points, cands)
    k = int(np.argmax(vals))
    return float(vals[k]), cands[k].copy()


def triangle_sample_max(verts, targets, res, center=(0.0, 0.0), span=1.0):
    """Sample a spherical triangle and maximise the distance to ``targets``.

    Barycentric grid {center + span * (i, j) / res : |i|, |j| <= res} clipped
    to the triangle with vertices ``verts``; returns (value, l1, l2) where the best
    sample is l1*A + l2*B + (1-l1-l2)*C normalised.  Samples falling outside
    the triangle are skipped.
    """
    verts = np.asarray(verts, dtype=float)
    targets = np.asarray(targets, dtype=float)
    i, j = np.meshgrid(np.arange(-res, res + 1), np.arange(-res, res + 1), indexing="ij")
    l1 = center[0] + span * i.ravel() / res
    l2 = center[1] + span * j.ravel() / res
    l3 = 1.0 - l1 - l2
    ok = (l1 >= 0) & (l2 >= 0) & (l3 >= 0)
    l1, l2, l3 = l1[ok], l2[ok], l3[ok]
    pts = l1[:, None] * verts[0] + l2[:, None] * verts[1] + l3[:, None] * verts[2]
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    vals = min_angle_field(targets, pts)
    k = int(np.argmax(vals))
    return float(vals[k]), float(l1[k]), float(l2[k])
