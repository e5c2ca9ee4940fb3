"""Backend selection for the numeric kernels.

numba-compiled kernels are used when numba imports and the environment
variable ``MIEPOT_DISABLE_NUMBA`` is unset or falsy; otherwise the vectorized
numpy versions are used.  Both expose the same functions:

    sturm_count(diag, off2, shift) -> int
    lowest_eigenvalues(diag, off, count, tol) -> ndarray
    tridiag_solve(diag, off, shift, rhs) -> ndarray
    laguerre(n, alpha, z) -> ndarray
    gershgorin(diag, off) -> (lo, hi)
"""

import os
from types import ModuleType

from . import _kernels_numpy

ENV_FLAG = "MIEPOT_DISABLE_NUMBA"


def _numba_requested() -> bool:
    return os.environ.get(ENV_FLAG, "").strip().lower() not in {"1", "true", "yes", "on"}


def _load_numba() -> ModuleType | None:
    try:
        from . import _kernels_numba
    except ImportError:
        return None
    return _kernels_numba


_numba_backend = _load_numba() if _numba_requested() else None


def get_backend(name: str | None = None) -> ModuleType:
    """Return the kernel module: ``"numba"``, ``"numpy"`` or the active default."""
    if name is None:
        return _numba_backend or _kernels_numpy
    if name == "numpy":
        return _kernels_numpy
    if name == "numba":
        mod = _numba_backend or _load_numba()
        if mod is None:
            raise ImportError("numba backend requested but numba is not importable")
        return mod
    raise ValueError(f"unknown backend {name!r}")


def active_backend_name() -> str:
    return "numba" if _numba_backend is not None else "numpy"


_active = get_backend()
sturm_count = _active.sturm_count
lowest_eigenvalues = _active.lowest_eigenvalues
tridiag_solve = _active.tridiag_solve
laguerre = _active.laguerre
gershgorin = _active.gershgorin
