"""Numeric kernels with a compiled backend and a pure-Python fallback.

The compiled module is used when it imports cleanly. Setting
``CURVEBOUND_PURE_PYTHON=1`` forces the fallback. ``BACKEND`` names the
active choice.
"""

import os

from . import _pure

if os.environ.get("CURVEBOUND_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pure
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pure
        BACKEND = "python"

EDGE, INNER, OUTER = _pure.EDGE, _pure.INNER, _pure.OUTER

jacobi_eigenvalues = _impl.jacobi_eigenvalues
sturm_count = _impl.sturm_count
bisect_eigenvalues = _impl.bisect_eigenvalues
cheeger_enum = _impl.cheeger_enum
partition_enum = _impl.partition_enum


def backends():
    """Available kernel modules keyed by name, for tests and benchmarks."""
    out = {"python": _pure}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
