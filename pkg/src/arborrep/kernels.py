"""Hot loops, compiled when the extension is built.

Set ``ARBORREP_PURE=1`` to force the pure-Python fallback.
"""
import os

BACKEND = "python"
if not os.environ.get("ARBORREP_PURE"):
    try:
        from ._kernels import fixed_points, intersection_numbers, pair_orbits
        BACKEND = "cython"
    except ImportError:
        pass
if BACKEND == "python":
    from ._kernels_py import fixed_points, intersection_numbers, pair_orbits

__all__ = ["BACKEND", "fixed_points", "intersection_numbers", "pair_orbits"]
