"""Kernel selection.

The compiled kernel is used when it was built; otherwise, or when the
environment variable ``CMSPACE_PURE`` is set to a non-empty value, the
pure-Python kernel is used.  ``BACKEND`` names the active one.
"""

import os

from . import _pykernel

UNION, INTER, DIFF, SYMDIFF = 0, 1, 2, 3

_impl = _pykernel
BACKEND = "python"

if not os.environ.get("CMSPACE_PURE"):
    try:
        from . import _ckernel as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernel

combine = _impl.combine
combine_measure = _impl.combine_measure
measure = _impl.measure
subset = _impl.subset


def backends():
    """Available kernel modules keyed by name (for benchmarks and tests)."""
    out = {"python": _pykernel}
    try:
        from . import _ckernel

        out["cython"] = _ckernel
    except ImportError:
        pass
    return out
