# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the numeric kernels (same contracts as _pykernels)."""
import numpy as np
cimport numpy as cnp
from libc.math cimport atan2, sqrt, fabs

cnp.import_array()

BACKEND = "cython"

cdef double EPS = 1e-14


cdef inline double _angle(double ax, double ay, double az,
                          double bx, double by, double bz) noexcept nogil:
    cdef double cx = ay * bz - az * by
    cdef double cy = az * bx - ax * bz
    cdef double cz = ax * by - ay * bx
    return atan2(sqrt(cx * cx + cy * cy + cz * cz), ax * bx + ay * by + az * bz)


cdef inline double _min_angle(const double[:, ::1] p, double x, double y, double z,
                              double stop) noexcept nogil:
    """Nearest-point angle; returns early once it drops below ``stop``."""
    cdef Py_ssize_t k
    cdef double best = 1e300, a
    for k in range(p.shape[0]):
        a = _angle(x, y, z, p[k, 0], p[k, 1], p[k, 2])
        if a < best:
            best = a
            if best < stop:
                return best
    return best


def min_angle_field(points, dirs):
    cdef const double[:, ::1] p = np.ascontiguousarray(points, dtype=np.float64)
    cdef const double[:, ::1] d = np.ascontiguousarray(dirs, dtype=np.float64)
    out = np.empty(d.shape[0])
    cdef double[::1] o = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(d.shape[0]):
            o[i] = _min_angle(p, d[i, 0], d[i, 1], d[i, 2], -1.0)
    return out


cdef struct Best:
    double value
    double x, y, z


cdef inline void _try(const double[:, ::1] p, double x, double y, double z, Best* best) noexcept nogil:
    cdef double nrm = sqrt(x * x + y * y + z * z)
    cdef double v
    if nrm <= EPS:
        return
    x /= nrm
    y /= nrm
    z /= nrm
    v = _min_angle(p, x, y, z, best.value)
    if v > best.value:
        best.value = v
        best.x = x
        best.y = y
        best.z = z


def candidate_farthest(points):
    cdef const double[:, ::1] p = np.ascontiguousarray(points, dtype=np.float64)
    cdef Py_ssize_t n = p.shape[0], a, b, c
    cdef Best best
    cdef double mx, my, mz, nrm, ux, uy, uz, vx, vy, vz, cx, cy, cz
    best.value = -1.0
    best.x = best.y = best.z = 0.0
    with nogil:
        for a in range(n):
            _try(p, -p[a, 0], -p[a, 1], -p[a, 2], &best)
        for a in range(n):
            for b in range(a + 1, n):
                mx = p[a, 0] + p[b, 0]
                my = p[a, 1] + p[b, 1]
                mz = p[a, 2] + p[b, 2]
                nrm = sqrt(mx * mx + my * my + mz * mz)
                if nrm > 1e-12:
                    _try(p, -mx, -my, -mz, &best)
                else:
                    # perpendicular to an antipodal pair
                    if fabs(p[a, 0]) <= fabs(p[a, 1]) and fabs(p[a, 0]) <= fabs(p[a, 2]):
                        _try(p, 0.0, p[a, 2], -p[a, 1], &best)
                    elif fabs(p[a, 1]) <= fabs(p[a, 2]):
                        _try(p, -p[a, 2], 0.0, p[a, 0], &best)
                    else:
                        _try(p, p[a, 1], -p[a, 0], 0.0, &best)
        for a in range(n):
            for b in range(a + 1, n):
                ux = p[b, 0] - p[a, 0]
                uy = p[b, 1] - p[a, 1]
                uz = p[b, 2] - p[a, 2]
                for c in range(b + 1, n):
                    vx = p[c, 0] - p[a, 0]
                    vy = p[c, 1] - p[a, 1]
                    vz = p[c, 2] - p[a, 2]
                    cx = uy * vz - uz * vy
                    cy = uz * vx - ux * vz
                    cz = ux * vy - uy * vx
                    _try(p, cx, cy, cz, &best)
                    _try(p, -cx, -cy, -cz, &best)
    return best.value, np.array([best.x, best.y, best.z])


def triangle_sample_max(verts, targets, Py_ssize_t res, center=(0.0, 0.0), double span=1.0):
    cdef const double[:, ::1] v = np.ascontiguousarray(verts, dtype=np.float64)
    cdef const double[:, ::1] t = np.ascontiguousarray(targets, dtype=np.float64)
    cdef double c1 = center[0], c2 = center[1]
    cdef Py_ssize_t i, j
    cdef double l1, l2, l3, x, y, z, nrm, val
    cdef double best = -1.0, b1 = 0.0, b2 = 0.0
    with nogil:
        for i in range(-res, res + 1):
            l1 = c1 + span * i / res
            if l1 < 0:
                continue
            for j in range(-res, res + 1):
                l2 = c2 + span * j / res
                l3 = 1.0 - l1 - l2
                if l2 < 0 or l3 < 0:
                    continue
                x = l1 * v[0, 0] + l2 * v[1, 0] + l3 * v[2, 0]
                y = l1 * v[0, 1] + l2 * v[1, 1] + l3 * v[2, 1]
                z = l1 * v[0, 2] + l2 * v[1, 2] + l3 * v[2, 2]
                nrm = sqrt(x * x + y * y + z * z)
                val = _min_angle(t, x / nrm, y / nrm, z / nrm, best)
                if val > best:
                    best = val
                    b1 = l1
                    b2 = l2
    return best, b1, b2
