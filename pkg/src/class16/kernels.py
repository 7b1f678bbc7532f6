"""Kernel backend selection.

The compiled extension is used when it imports and ``CLASS16_PURE_PYTHON`` is
unset.  Each compiled call that would overflow 64-bit integers transparently
re-runs in pure Python.
"""
import os

from class16 import _pykernels
from class16._pykernels import StepLimitExceeded

try:
    if os.environ.get("CLASS16_PURE_PYTHON"):
        raise ImportError("pure Python forced")
    from class16 import _ckernels as _fast
except ImportError:
    _fast = None

BACKEND = "cython" if _fast is not None else "python"


def _dispatch(name):
    slow = getattr(_pykernels, name)
    if _fast is None:
        return slow
    fast = getattr(_fast, name)

    def call(*args):
        try:
            return fast(*args)
        except OverflowError:
            return slow(*args)

    call.__name__ = name
    call.__doc__ = slow.__doc__
    return call


negcf_expand = _dispatch("negcf_expand")
count_reduced_definite = _dispatch("count_reduced_definite")
reduced_indefinite_forms = _dispatch("reduced_indefinite_forms")
indefinite_cycles = _dispatch("indefinite_cycles")
half_factorial_mod = _dispatch("half_factorial_mod")

__all__ = [
    "BACKEND",
    "StepLimitExceeded",
    "negcf_expand",
    "count_reduced_definite",
    "reduced_indefinite_forms",
    "indefinite_cycles",
    "half_factorial_mod",
]
