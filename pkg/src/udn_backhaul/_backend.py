"""Kernel backend selection.

Prefers the compiled Cython kernels and falls back to the pure-Python
implementation when the extension is not built. Set UDN_BACKHAUL_PURE=1 to
force the pure-Python path (used by the benchmark and equivalence tests).
"""

import os

from . import _purepy

if os.environ.get("UDN_BACKHAUL_PURE") == "1":
    _impl = _purepy
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _purepy

BACKEND = _impl.BACKEND_NAME
build_routes_arrays = _impl.build_routes_arrays
run_schedule_arrays = _impl.run_schedule_arrays


def backend_name() -> str:
    """Name of the active kernel backend: "compiled" or "python"."""
    return BACKEND
