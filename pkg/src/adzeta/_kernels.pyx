# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled mode-sum kernels (same algorithms as ``_kernels_py``)."""
from libc.math cimport exp, sqrt, fabs

cdef double SQRT_PI = 1.7724538509055160273
cdef int CF_DEPTH = 160


cdef inline double _erf_series(double x) nogil:
    cdef double term = x, total = x, x2 = 2.0 * x * x
    cdef int n = 0
    while True:
        n += 1
        term *= x2 / (2 * n + 1)
        total += term
        if term <= 1e-17 * total:
            break
    return 2.0 / SQRT_PI * exp(-x * x) * total


cdef inline double _erfcx_cf(double x) nogil:
    cdef double f = x
    cdef int k, depth = 12 + <int>(200.0 / (x * x))
    if depth > CF_DEPTH:
        depth = CF_DEPTH
    for k in range(depth, 0, -1):
        f = x + 0.5 * k / f
    return 1.0 / (SQRT_PI * f)


cdef double c_erfcx(double x) nogil:
    if x < 0.0:
        return 2.0 * exp(x * x) - c_erfcx(-x)
    if x < 1.0:
        return exp(x * x) * (1.0 - _erf_series(x))
    return _erfcx_cf(x)


cdef double c_erfc(double x) nogil:
    if x < 0.0:
        return 2.0 - c_erfc(-x)
    if x < 1.0:
        return 1.0 - _erf_series(x)
    if x > 27.3:
        return 0.0
    return exp(-x * x) * _erfcx_cf(x)


cdef inline void _acc(double v, double* total, double* comp) nogil:
    cdef double t = total[0] + v
    if fabs(total[0]) >= fabs(v):
        comp[0] += (total[0] - t) + v
    else:
        comp[0] += (v - t) + total[0]
    total[0] = t


def erfcx(double x):
    return c_erfcx(x)


def erfc(double x):
    return c_erfc(x)


def heat_sum(const double[::1] lam, const double[::1] mult, double t):
    """sum_n m_n exp(-lam_n^2 t), ascending, compensated."""
    cdef Py_ssize_t i, n = lam.shape[0]
    cdef double total = 0.0, comp = 0.0, arg, term
    with nogil:
        for i in range(n):
            arg = lam[i] * lam[i] * t
            if arg > 745.0:
                break
            term = mult[i] * exp(-arg)
            _acc(term, &total, &comp)
    return total + comp


def erfc_sum(const double[::1] lam, const double[::1] mult, double t):
    """sum_n m_n erfc(lam_n sqrt(t))."""
    cdef Py_ssize_t i, n = lam.shape[0]
    cdef double total = 0.0, comp = 0.0, term, rt = sqrt(t)
    with nogil:
        for i in range(n):
            term = mult[i] * c_erfc(lam[i] * rt)
            if term == 0.0:
                break
            _acc(term, &total, &comp)
    return total + comp


def aps_weight_sum(const double[::1] lam, const double[::1] mult,
                   double u, double t, int power):
    """sum_n m_n lam_n^power e^{2 lam_n u} erfc(u/sqrt(t) + lam_n sqrt(t)).

    Evaluated as erfcx(z) exp(-u^2/t - lam^2 t) so nothing overflows.
    """
    cdef Py_ssize_t i, n = lam.shape[0]
    cdef double total = 0.0, comp = 0.0, term, rt = sqrt(t), z, arg, w
    with nogil:
        for i in range(n):
            arg = u * u / t + lam[i] * lam[i] * t
            if arg > 745.0:
                break
            z = u / rt + lam[i] * rt
            w = 1.0
            if power == 1:
                w = lam[i]
            term = mult[i] * w * c_erfcx(z) * exp(-arg)
            _acc(term, &total, &comp)
    return total + comp
