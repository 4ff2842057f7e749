"""Kernel backend selection.

Hot loops exist twice: as numba-compiled scalar loops (``_kernels_numba``)
and as vectorized numpy code (``_kernels_numpy``). The numba path is used
when numba imports and the environment variable ``HARQCACHE_BACKEND`` is
not ``numpy``. The Monte Carlo and knapsack kernels are bit-identical
across backends; the delay recursion agrees to rounding.
"""
import os

from ._jit import HAVE_NUMBA

_requested = os.environ.get("HARQCACHE_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ImportError(f"HARQCACHE_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

BACKEND = "numba" if (_requested == "numba" and HAVE_NUMBA) else "numpy"

if BACKEND == "numba":
    from . import _kernels_numba as kernels
else:
    from . import _kernels_numpy as kernels

__all__ = ["BACKEND", "HAVE_NUMBA", "kernels"]
