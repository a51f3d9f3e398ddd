"""Exact computations for extended Poincare algebras and the homogeneous
quaternionic Kahler geometry they carry."""
from .exactla import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
