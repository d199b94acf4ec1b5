"""Kernel backend selection.

The compiled extension (``satlab._core``) is used when importable; the
pure-Python twin (``satlab._pure``) otherwise.  ``SATLAB_BACKEND=pure``
forces the fallback, ``SATLAB_BACKEND=compiled`` makes a missing extension
an error instead of a silent downgrade.  Both backends expose the same
functions with identical semantics and RNG streams.
"""

from __future__ import annotations

import os

from . import _pure

_requested = os.environ.get("SATLAB_BACKEND", "auto").strip().lower()

if _requested == "pure":
    kernels = _pure
elif _requested in ("auto", "compiled", ""):
    try:
        from . import _core as kernels  # type: ignore[attr-defined]
    except ImportError:
        if _requested == "compiled":
            raise ImportError(
                "SATLAB_BACKEND=compiled but the satlab._core extension is not built"
            ) from None
        kernels = _pure
else:
    raise ValueError(f"unknown SATLAB_BACKEND value: {_requested!r}")


def backend_name() -> str:
    """Name of the active kernel backend ("compiled" or "pure")."""
    return kernels.BACKEND_NAME
