"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``LAMCORE_PURE=1`` to force the pure-Python kernel (used by the benchmark
to compare the two lanes).
"""

import os

from . import _kernel_py

if os.environ.get("LAMCORE_PURE"):
    _impl = _kernel_py
    COMPILED = False
else:
    try:
        from . import _kernel as _impl  # type: ignore[attr-defined]

        COMPILED = True
    except ImportError:
        _impl = _kernel_py
        COMPILED = False

trace = _impl.trace
reduce_steps = _impl.reduce_steps
coords_of_steps = _kernel_py.coords_of_steps
