# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled single-shift complex QR iteration on an upper Hessenberg matrix.

Mirrors ``hqr_py.hqr_eigvals`` step for step; see there for the algorithm.
"""
import numpy as np

from libc.math cimport sqrt, fabs, hypot, copysign
from libc.stdlib cimport malloc, free

cdef double EPS = 2.220446049250313e-16


cdef inline double cabs(double complex z) noexcept nogil:
    return hypot(z.real, z.imag)


cdef inline double complex csqrt(double complex z) noexcept nogil:
    cdef double r = cabs(z)
    cdef double re, im
    if r == 0.0:
        return 0.0
    re = sqrt(0.5 * (r + z.real))
    im = copysign(sqrt(0.5 * (r - z.real)), z.imag)
    return re + 1j * im


cdef inline double complex conj(double complex z) noexcept nogil:
    return z.real - 1j * z.imag


cdef Py_ssize_t _hqr(double complex[:, ::1] H, double complex[::1] w,
                     Py_ssize_t max_iter, double scale,
                     double* cs, double complex* sn) noexcept nogil:
    cdef Py_ssize_t n = H.shape[0]
    cdef Py_ssize_t hi = n - 1
    cdef Py_ssize_t lo, k, j, i, imax
    cdef Py_ssize_t total = 0, its = 0
    cdef double tst, r, aa
    cdef double complex a, b, c, d, half, disc, den, shift, x, y, s, phase

    while hi >= 0:
        if hi == 0:
            w[0] = H[0, 0]
            break
        lo = hi
        while lo > 0:
            tst = cabs(H[lo - 1, lo - 1]) + cabs(H[lo, lo])
            if tst == 0.0:
                tst = scale
            if cabs(H[lo, lo - 1]) <= EPS * tst:
                break
            lo -= 1
        if lo > 0:
            H[lo, lo - 1] = 0.0
        if lo == hi:
            w[hi] = H[hi, hi]
            hi -= 1
            its = 0
            continue
        if total >= max_iter:
            return -1 - hi
        total += 1
        its += 1

        if its % 10 == 0:
            shift = H[hi, hi] + 1.5 * cabs(H[hi, hi - 1])
        else:
            a = H[hi - 1, hi - 1]
            b = H[hi - 1, hi]
            c = H[hi, hi - 1]
            d = H[hi, hi]
            half = 0.5 * (a - d)
            disc = csqrt(half * half + b * c)
            if cabs(half + disc) >= cabs(half - disc):
                den = half + disc
            else:
                den = half - disc
            if cabs(den) == 0.0:
                shift = d
            else:
                shift = d - b * c / den

        for k in range(lo, hi + 1):
            H[k, k] = H[k, k] - shift
        for k in range(lo, hi):
            a = H[k, k]
            b = H[k + 1, k]
            aa = cabs(a)
            r = hypot(aa, cabs(b))
            if r == 0.0:
                cs[k] = 1.0
                sn[k] = 0.0
                continue
            if aa == 0.0:
                cs[k] = 0.0
                sn[k] = conj(b) / cabs(b)
            else:
                phase = a / aa
                cs[k] = aa / r
                sn[k] = phase * conj(b) / r
            s = sn[k]
            for j in range(k, hi + 1):
                x = H[k, j]
                y = H[k + 1, j]
                H[k, j] = cs[k] * x + s * y
                H[k + 1, j] = -conj(s) * x + cs[k] * y
        for k in range(lo, hi):
            s = sn[k]
            imax = k + 2 if k + 2 < hi else hi
            for i in range(lo, imax + 1):
                x = H[i, k]
                y = H[i, k + 1]
                H[i, k] = cs[k] * x + conj(s) * y
                H[i, k + 1] = -s * x + cs[k] * y
        for k in range(lo, hi + 1):
            H[k, k] = H[k, k] + shift
    return total


def hqr_eigvals(H, Py_ssize_t max_iter):
    """Eigenvalues of an upper Hessenberg complex matrix.

    ``H`` is overwritten. Returns ``(eigenvalues, iterations)``; ``iterations``
    is negative when the budget ran out (``-1 - index`` of the stuck row).
    """
    cdef double complex[:, ::1] Hv = np.ascontiguousarray(H, dtype=np.complex128)
    cdef Py_ssize_t n = Hv.shape[0]
    out = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] wv = out
    cdef double scale = float(np.abs(np.asarray(Hv)).sum()) or 1.0
    cdef Py_ssize_t status
    cdef double* cs = <double*> malloc(max(n, 1) * sizeof(double))
    cdef double complex* sn = <double complex*> malloc(max(n, 1) * sizeof(double complex))
    if cs == NULL or sn == NULL:
        free(cs)
        free(sn)
        raise MemoryError()
    try:
        with nogil:
            status = _hqr(Hv, wv, max_iter, scale, cs, sn)
    finally:
        free(cs)
        free(sn)
    return out, status
