"""Exact arithmetic for the mod-16 congruence between h(p) and h(-p)."""
from class16.kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
