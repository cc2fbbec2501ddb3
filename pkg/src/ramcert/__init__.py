"""Exact certificates for complex line arrangements and related spherical checks."""
from ._kernels import BACKEND
from .cyclofield import CycloElement, CyclotomicField

__version__ = "0.1.0"

__all__ = ["BACKEND", "CycloElement", "CyclotomicField", "__version__"]
