import os
import subprocess
import sys

import numpy as np
import pytest

from ramcert import _kernels
from ramcert._kernels import compiled_backend, python_backend

needs_compiled = pytest.mark.skipif(compiled_backend is None, reason="compiled extension not built")


def _points(rng, n):
    p = rng.normal(size=(n, 3))
    return p / np.linalg.norm(p, axis=1)[:, None]


@needs_compiled
def test_min_angle_field_parity():
    rng = np.random.default_rng(0)
    pts, dirs = _points(rng, 9), _points(rng, 5000)
    assert np.allclose(compiled_backend.min_angle_field(pts, dirs),
                       python_backend.min_angle_field(pts, dirs), atol=1e-13)


@needs_compiled
@pytest.mark.parametrize("n", [1, 2, 3, 8, 20])
def test_candidate_farthest_parity(n):
    rng = np.random.default_rng(n)
    pts = _points(rng, n)
    a, _ = compiled_backend.candidate_farthest(pts)
    b, _ = python_backend.candidate_farthest(pts)
    assert abs(a - b) < 1e-12


@needs_compiled
def test_candidate_farthest_antipodal_pair():
    pts = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]])
    for backend in (compiled_backend, python_backend):
        val, q = backend.candidate_farthest(pts)
        assert val == pytest.approx(np.pi / 2)
        assert abs(q[2]) < 1e-12


@needs_compiled
def test_triangle_sample_max_parity():
    rng = np.random.default_rng(4)
    verts, targets = _points(rng, 3), _points(rng, 2)
    a = compiled_backend.triangle_sample_max(verts, targets, 60)
    b = python_backend.triangle_sample_max(verts, targets, 60)
    assert abs(a[0] - b[0]) < 1e-12
    a = compiled_backend.triangle_sample_max(verts, targets, 20, (0.3, 0.3), 0.1)
    b = python_backend.triangle_sample_max(verts, targets, 20, (0.3, 0.3), 0.1)
    assert abs(a[0] - b[0]) < 1e-12


def test_active_backend():
    expected = "cython" if compiled_backend is not None else python_backend.BACKEND
    assert _kernels.BACKEND == expected


def test_pure_python_switch():
    env = dict(os.environ, RAMCERT_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c",
         "from ramcert import _kernels, BACKEND; from ramcert.catalog import ceva;"
         "from ramcert.hopf import cat1_verdict; print(BACKEND, cat1_verdict([(1,0),(0,1)]).status.value)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.split() == [python_backend.BACKEND, "Cat1Boundary"]
