"""Kernel backend selection.

The hot grid kernels (capsule rasterization, rotated binning, field sums)
exist twice: a Cython extension (``flab._kernels``) and a pure-numpy
fallback (``flab._kernels_py``) with identical contracts.  The extension is
preferred when importable; set FLAB_KERNELS=python to force the fallback or
FLAB_KERNELS=ext to fail loudly when the extension is missing.
``bench/bench_kernels.py`` compares the two.
"""

import os

_choice = os.environ.get("FLAB_KERNELS", "").strip().lower()

if _choice == "python":
    from . import _kernels_py as _impl
elif _choice == "ext":
    from . import _kernels as _impl  # type: ignore[attr-defined]
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND

capsule_rows = _impl.capsule_rows
rows_to_cells = _impl.rows_to_cells
capsule_cell_count = _impl.capsule_cell_count
capsule_sum = _impl.capsule_sum
sampled_segment_cells = _impl.sampled_segment_cells
bin_all_cells = _impl.bin_all_cells
bin_cells = _impl.bin_cells
