"""Kernel backend selection.

Prefers the compiled Cython core, falls back to the NumPy implementation
when the extension was not built. Both produce bit-identical results;
benchmarks/bench_kernels.py compares their speed.
"""

try:
    from . import _kernels as _impl

    COMPILED = True
except ImportError:  # extension not built; pure-Python install
    from . import _kernels_np as _impl

    COMPILED = False

BACKEND = "compiled" if COMPILED else "numpy"

segment_max = _impl.segment_max
scatter_add_rows = _impl.scatter_add_rows
raycast_boxes = _impl.raycast_boxes
