"""Backend selection for the hot kernels.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python reference in ``_kernels_py`` is used. Setting ``COLORSAT_PURE=1``
forces the pure-Python backend.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("COLORSAT_PURE", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
MAX_COMPILED_N = 64  # the compiled kernels use 64-bit vertex masks


def canon_label(n, mat, t):
    impl = _impl if n <= MAX_COMPILED_N else _kernels_py
    return impl.canon_label(n, mat, t)


def tri_scan(n, mat, t, r, limit, stop_early):
    impl = _impl if n <= MAX_COMPILED_N else _kernels_py
    return impl.tri_scan(n, mat, t, r, limit, stop_early)


def tri_find(n, mat, t, r):
    impl = _impl if n <= MAX_COMPILED_N else _kernels_py
    return impl.tri_find(n, mat, t, r)

__all__ = ["BACKEND", "canon_label", "tri_scan", "tri_find", "backends"]


def backends() -> dict:
    """All importable backends by name, for cross-checking and benchmarks."""
    found = {"python": _kernels_py}
    try:
        from . import _ckernels

        found["cython"] = _ckernels
    except ImportError:
        pass
    return found
