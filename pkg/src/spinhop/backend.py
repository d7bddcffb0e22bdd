"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``SPINHOP_BACKEND=python`` (or ``cython``) to force a choice at import
time; ``set_backend`` switches at runtime (used by tests and benchmarks).
"""

from __future__ import annotations

import os

from . import _jacobi_py

_FORCED = os.environ.get("SPINHOP_BACKEND", "")

if _FORCED == "python":
    jacobi_sweeps = _jacobi_py.jacobi_sweeps
    ACTIVE = "python"
elif _FORCED in ("", "cython"):
    try:
        from . import _jacobi as _jacobi_cy
    except ImportError:
        if _FORCED == "cython":
            raise ImportError(
                "SPINHOP_BACKEND=cython but the compiled kernel is not built"
            ) from None
        jacobi_sweeps = _jacobi_py.jacobi_sweeps
        ACTIVE = "python"
    else:
        jacobi_sweeps = _jacobi_cy.jacobi_sweeps
        ACTIVE = "cython"
else:
    raise ValueError(
        f"unknown SPINHOP_BACKEND={_FORCED!r} (expected 'cython' or 'python')"
    )


def available():
    """Map of kernel name -> kernel function for this environment."""
    kernels = {"python": _jacobi_py.jacobi_sweeps}
    try:
        from . import _jacobi
    except ImportError:
        pass
    else:
        kernels["cython"] = _jacobi.jacobi_sweeps
    return kernels


def set_backend(name):
    """Switch the active kernel at runtime."""
    global jacobi_sweeps, ACTIVE
    kernels = available()
    if name not in kernels:
        raise ValueError(f"backend {name!r} not available (have {sorted(kernels)})")
    jacobi_sweeps = kernels[name]
    ACTIVE = name
