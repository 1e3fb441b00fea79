"""Kernel backend selection.

``CIRCLEDYN_BACKEND`` picks the implementation: ``numba`` (jitted, the
default when numba imports cleanly) or ``numpy`` (pure vectorized fallback).
Both expose the same functions with identical semantics; the test suite and
benchmark exercise them side by side.
"""

from __future__ import annotations

import os

_requested = os.environ.get("CIRCLEDYN_BACKEND", "auto").strip().lower()

if _requested not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"CIRCLEDYN_BACKEND={_requested!r} not recognized (use 'numba' or 'numpy')"
    )

if _requested == "numpy":
    from . import numpy_backend as _impl

    BACKEND = "numpy"
elif _requested == "numba":
    from . import numba_backend as _impl  # hard failure if numba is missing

    BACKEND = "numba"
else:
    try:
        from . import numba_backend as _impl

        BACKEND = "numba"
    except ImportError:
        from . import numpy_backend as _impl

        BACKEND = "numpy"

TOL_ROOT = _impl.TOL_ROOT
BISECT_WIDTH = _impl.BISECT_WIDTH

lift = _impl.lift
d1 = _impl.d1
d2 = _impl.d2
lift_iter = _impl.lift_iter
orbit_multiplier = _impl.orbit_multiplier
invert = _impl.invert
periodic_residual = _impl.periodic_residual
refine_periodic = _impl.refine_periodic

__all__ = [
    "BACKEND",
    "TOL_ROOT",
    "BISECT_WIDTH",
    "lift",
    "d1",
    "d2",
    "lift_iter",
    "orbit_multiplier",
    "invert",
    "periodic_residual",
    "refine_periodic",
]
