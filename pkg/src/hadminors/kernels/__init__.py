"""Hot loops, with a compiled and a pure-numpy implementation.

The backend is chosen once at import time from ``HADMINORS_BACKEND``
(``numba`` or ``numpy``; default ``numba``).  If numba cannot be imported
the numpy path is used regardless.
"""

from __future__ import annotations

import logging
import os

from . import _numpy

log = logging.getLogger(__name__)

BACKENDS = ("numba", "numpy")


def _load(name: str):
    if name == "numpy":
        return _numpy
    try:
        from . import _numba
    except ImportError:  # pragma: no cover - numba is a declared dependency
        log.warning("numba unavailable, using numpy kernels")
        return _numpy
    return _numba


def get_backend(name: str):
    """Return the kernel module for ``name`` (for benchmarks and tests)."""
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}; expected one of {BACKENDS}")
    return _load(name)


BACKEND = os.environ.get("HADMINORS_BACKEND", "numba").strip().lower() or "numba"
if BACKEND not in BACKENDS:
    raise ImportError(f"HADMINORS_BACKEND={BACKEND!r}; expected one of {BACKENDS}")
_impl = _load(BACKEND)
BACKEND = "numba" if _impl is not _numpy else "numpy"

algd_histogram = _impl.algd_histogram
algd_block = _impl.algd_block
alga_histogram = _impl.alga_histogram
gepp_det = _impl.gepp_det
bareiss_det_batch = _impl.bareiss_det_batch
pm1_normalized_dets = _impl.pm1_normalized_dets
pm1_gf2_even = _impl.pm1_gf2_even

__all__ = [
    "BACKEND",
    "BACKENDS",
    "get_backend",
    "algd_histogram",
    "algd_block",
    "alga_histogram",
    "gepp_det",
    "bareiss_det_batch",
    "pm1_normalized_dets",
    "pm1_gf2_even",
]
