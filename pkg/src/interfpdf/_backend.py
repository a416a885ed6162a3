"""Select the numerical kernel backend at import time.

The compiled Cython extension ``interfpdf._kernels`` is preferred; the
pure-Python twin ``interfpdf._kernels_py`` is the fallback.  Set
``INTERFPDF_PURE_PY=1`` to force the fallback (used by the benchmark and
the backend-equivalence tests).
"""

import os

_force_pure = os.environ.get("INTERFPDF_PURE_PY", "").lower() in ("1", "true", "yes")

if _force_pure:
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels

COMPILED = bool(getattr(kernels, "COMPILED", False))


def backend_name() -> str:
    return "compiled" if COMPILED else "pure-python"


def get_kernels(pure: bool | None = None):
    """Return a kernel module explicitly (for benchmarks/tests)."""
    if pure is None:
        return kernels
    if pure:
        from . import _kernels_py

        return _kernels_py
    from . import _kernels  # type: ignore[attr-defined]

    return _kernels
