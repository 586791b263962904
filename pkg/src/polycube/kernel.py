"""Backend selection for the profile scan.

The compiled extension is used when it imports; setting ``POLYCUBE_PURE=1``
forces the pure-Python twin.
"""
from __future__ import annotations

import os

from . import _fallback

BACKEND = "python"
scan_chunk = _fallback.scan_chunk

if os.environ.get("POLYCUBE_PURE", "") not in ("1", "true", "yes"):
    try:
        from ._kernel import scan_chunk  # noqa: F811
        BACKEND = "cython"
    except ImportError:  # extension not built
        pass

python_scan_chunk = _fallback.scan_chunk


def compiled_scan_chunk():
    """The compiled scan, or None when the extension is unavailable."""
    try:
        from ._kernel import scan_chunk as compiled
    except ImportError:
        return None
    return compiled
