"""Pure-Python (numpy) fallback for the compiled mode-sum kernels.

Same truncation rules and special-function algorithms as ``_kernels.pyx``;
sums are accumulated with ``math.fsum`` instead of Neumaier compensation, so
the two back ends agree to a few ulps, not bitwise.
"""
from __future__ import annotations

import math

import numpy as np

from . import specfun

_SQRT_PI = math.sqrt(math.pi)
_CF_DEPTH = 160


def _erf_series(x: np.ndarray) -> np.ndarray:
    term = x.copy()
    total = x.copy()
    x2 = 2.0 * x * x
    for n in range(1, 200):
        term = term * x2 / (2 * n + 1)
        total += term
        if np.all(term <= 1e-17 * total):
            break
    return 2.0 / _SQRT_PI * np.exp(-x * x) * total


def _erfcx_cf(x: np.ndarray) -> np.ndarray:
    f = x.copy()
    depth = min(_CF_DEPTH, 12 + int(200.0 / float(np.min(x)) ** 2)) if x.size else 0
    for k in range(depth, 0, -1):
        f = x + 0.5 * k / f
    return 1.0 / (_SQRT_PI * f)


def erfcx_array(x: np.ndarray) -> np.ndarray:
    """erfcx for a nonnegative array."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = x < 1.0
    if np.any(small):
        xs = x[small]
        out[small] = np.exp(xs * xs) * (1.0 - _erf_series(xs))
    if np.any(~small):
        out[~small] = _erfcx_cf(x[~small])
    return out


def erfcx(x: float) -> float:
    return specfun.erfcx(x)


def erfc(x: float) -> float:
    return specfun.erfc(x)


def heat_sum(lam: np.ndarray, mult: np.ndarray, t: float) -> float:
    arg = lam * lam * t
    keep = arg <= 745.0
    return math.fsum(mult[keep] * np.exp(-arg[keep]))


def erfc_sum(lam: np.ndarray, mult: np.ndarray, t: float) -> float:
    x = lam * math.sqrt(t)
    keep = x <= 27.3
    x = x[keep]
    vals = np.where(x < 1.0, 0.0, 0.0)
    small = x < 1.0
    if np.any(small):
        vals[small] = 1.0 - _erf_series(x[small])
    if np.any(~small):
        xb = x[~small]
        vals[~small] = np.exp(-xb * xb) * _erfcx_cf(xb)
    return math.fsum(mult[keep] * vals)


def aps_weight_sum(lam: np.ndarray, mult: np.ndarray, u: float, t: float, power: int) -> float:
    arg = u * u / t + lam * lam * t
    keep = arg <= 745.0
    if not np.any(keep):
        return 0.0
    lk = lam[keep]
    rt = math.sqrt(t)
    z = u / rt + lk * rt
    w = mult[keep] * (lk if power == 1 else 1.0)
    return math.fsum(w * erfcx_array(z) * np.exp(-arg[keep]))
