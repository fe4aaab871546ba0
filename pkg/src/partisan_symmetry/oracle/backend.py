"""Pick the compiled scan kernel when available.

Set ``PARTISAN_SYMMETRY_PURE_PYTHON=1`` to force the Python fallback.
"""
import os

from . import _kernel_py

_forced = os.environ.get("PARTISAN_SYMMETRY_PURE_PYTHON", "") not in ("", "0")

if _forced:
    scan = _kernel_py.scan
    BACKEND = "python"
else:
    try:
        from ._kernel import scan  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        scan = _kernel_py.scan
        BACKEND = "python"


def get_scan(name=None):
    """Return the scan function for ``name`` ('cython', 'python' or None for the default)."""
    if name is None:
        return scan
    if name == "python":
        return _kernel_py.scan
    if name == "cython":
        from ._kernel import scan as compiled

        return compiled
    raise ValueError(f"unknown backend {name!r}")
