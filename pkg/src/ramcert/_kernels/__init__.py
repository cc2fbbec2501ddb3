"""Numeric kernels: compiled extension when built, numpy fallback otherwise.

Set ``RAMCERT_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels as python_backend

compiled_backend = None
if not os.environ.get("RAMCERT_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:
        compiled_backend = None

_active = compiled_backend or python_backend

BACKEND = _active.BACKEND
min_angle_field = _active.min_angle_field
candidate_farthest = _active.candidate_farthest
triangle_sample_max = _active.triangle_sample_max

__all__ = [
    "BACKEND",
    "candidate_farthest",
    "compiled_backend",
    "min_angle_field",
    "python_backend",
    "triangle_sample_max",
]
