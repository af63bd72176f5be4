"""Mode-sum kernels used inside quadrature integrands.

The compiled extension ``adzeta._kernels`` is used when it was built; otherwise
the numpy implementation in ``adzeta._kernels_py`` is selected. Set the
environment variable ``ADZETA_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("ADZETA_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

heat_sum = _impl.heat_sum
erfc_sum = _impl.erfc_sum
aps_weight_sum = _impl.aps_weight_sum

__all__ = ["BACKEND", "heat_sum", "erfc_sum", "aps_weight_sum", "backend_module"]


def backend_module(name: str):
    """Return the kernel module for ``"cython"`` or ``"python"`` (for benchmarks/tests)."""
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels as mod  # type: ignore[attr-defined]

        return mod
    raise ValueError(f"unknown backend {name!r}")
