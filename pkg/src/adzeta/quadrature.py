"""Adaptive Gauss-Kronrod helpers (scipy QUADPACK) for Mellin-type integrals.

Every integral over (0, inf) is split at t = 1. On (0, 1] the substitution
t = x^2 removes the t^{-1/2} behaviour that heat traces carry; on [1, inf)
QUADPACK's own infinite-range transform is used. Complex exponents are
handled by integrating real and imaginary parts separately.
"""
from __future__ import annotations

import math
import warnings
from typing import Callable

from scipy import integrate as _spi

from .errors import QuadratureFailure

EPSABS = 1e-12
EPSREL = 1e-10
LIMIT = 400
# a quad result is rejected when its error estimate exceeds this multiple of the request
_SLACK = 1e3


def integrate(f: Callable[[float], float], a: float, b: float, *, epsabs: float = EPSABS,
              epsrel: float = EPSREL, limit: int = LIMIT, points=None, what: str = "integral") -> float:
    """Real integral of ``f`` over [a, b] (b may be inf) with an error-estimate check."""
    kw = {"epsabs": epsabs, "epsrel": epsrel, "limit": limit}
    if points is not None and math.isfinite(b):
        kw["points"] = points
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        val, err = _spi.quad(f, a, b, **kw)
    if not math.isfinite(val) or err > _SLACK * max(epsabs, epsrel * abs(val)):
        raise QuadratureFailure(f"{what}: value {val!r}, error estimate {err:.3e}")
    return val


def _split_parts(s):
    z = complex(s)
    return z.real, z.imag, isinstance(s, complex)


def mellin(f: Callable[[float], float], s, *, epsabs: float = EPSABS, epsrel: float = EPSREL,
           lower: float = 0.0, upper: float = math.inf, what: str = "mellin"):
    """int_lower^upper t^{s-1} f(t) dt for real-valued f, split at t = 1."""
    sig, tau, cplx = _split_parts(s)
    pieces = []
    if lower < 1.0:
        x0 = math.sqrt(lower)
        x1 = math.sqrt(min(upper, 1.0))

        def g_re(x):
            if x == 0.0:
                return 0.0
            lt = 2.0 * math.log(x)
            return 2.0 * x ** (2.0 * sig - 1.0) * math.cos(tau * lt) * f(x * x)

        def g_im(x):
            if x == 0.0:
                return 0.0
            lt = 2.0 * math.log(x)
            return 2.0 * x ** (2.0 * sig - 1.0) * math.sin(tau * lt) * f(x * x)

        pieces.append((g_re, g_im, x0, x1))
    if upper > 1.0:
        t0 = max(lower, 1.0)

        def h_re(t):
            return t ** (sig - 1.0) * math.cos(tau * math.log(t)) * f(t)

        def h_im(t):
            return t ** (sig - 1.0) * math.sin(tau * math.log(t)) * f(t)

        pieces.append((h_re, h_im, t0, upper))
    re = 0.0
    im = 0.0
    for fr, fi, a, b in pieces:
        re += integrate(fr, a, b, epsabs=epsabs, epsrel=epsrel, what=what)
        if tau != 0.0:
            im += integrate(fi, a, b, epsabs=epsabs, epsrel=epsrel, what=what)
    if cplx:
        return complex(re, im)
    return re
