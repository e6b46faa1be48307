"""Kernel backend selection.

The compiled extension is used when it imported cleanly; otherwise the
pure-Python twin takes over.  Set ``SIFBM_BACKEND=compiled`` or
``SIFBM_BACKEND=python`` to force one side (``compiled`` raises if the
extension is unavailable).  Both produce bit-identical results.
"""

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # pragma: no cover - depends on the build environment
    _compiled = None


def _select():
    requested = os.environ.get("SIFBM_BACKEND", "auto").strip().lower()
    if requested in ("", "auto"):
        return _compiled if _compiled is not None else _kernels_py
    if requested == "compiled":
        if _compiled is None:
            raise ImportError(
                "SIFBM_BACKEND=compiled, but the sifbm._kernels extension "
                "is not built")
        return _compiled
    if requested == "python":
        return _kernels_py
    raise ImportError(f"unknown SIFBM_BACKEND value: {requested!r}")


active = _select()

BACKEND_NAME = active.NAME
COMPILED_AVAILABLE = _compiled is not None


def thread_count():
    """Worker cap for embarrassingly parallel scans.

    Reads SIFBM_THREADS; unset, empty, or invalid values fall back to 1.
    """
    raw = os.environ.get("SIFBM_THREADS", "").strip()
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(1, value)
