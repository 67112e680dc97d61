"""Pure-Python single-shift complex QR iteration on a Hessenberg matrix.

Same algorithm as the compiled ``_hqr`` kernel:

* deflate when ``|H[k, k-1]| <= eps * (|H[k-1, k-1]| + |H[k, k]|)``;
* Wilkinson shift from the trailing 2x2 block, with an ad-hoc shift every
  tenth iteration on the same block;
* one explicit QR step ``H - s I = QR``, ``H <- RQ + s I`` with Givens
  rotations restricted to the active window (eigenvalues only, so the parts of
  ``H`` outside the window are never touched).
"""

import cmath

import numpy as np

EPS = np.finfo(float).eps


def _wilkinson(a, b, c, d):
    half = 0.5 * (a - d)
    disc = cmath.sqrt(half * half + b * c)
    den = half + disc if abs(half + disc) >= abs(half - disc) else half - disc
    if den == 0:
        return d
    return d - b * c / den


def hqr_eigvals(H, max_iter):
    """Eigenvalues of an upper Hessenberg complex matrix.

    ``H`` is overwritten. Returns ``(eigenvalues, iterations)``; ``iterations``
    is negative when the budget ran out (``-1 - index`` of the stuck row).
    """
    H = np.ascontiguousarray(H, dtype=np.complex128)
    n = H.shape[0]
    w = np.zeros(n, dtype=np.complex128)
    scale = float(np.abs(H).sum()) or 1.0
    cs = np.zeros(max(n, 1))
    sn = np.zeros(max(n, 1), dtype=np.complex128)
    hi = n - 1
    total = 0
    its = 0
    while hi >= 0:
        if hi == 0:
            w[0] = H[0, 0]
            break
        lo = hi
        while lo > 0:
            tst = abs(H[lo - 1, lo - 1]) + abs(H[lo, lo])
            if tst == 0.0:
                tst = scale
            if abs(H[lo, lo - 1]) <= EPS * tst:
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
            return w, -1 - hi
        total += 1
        its += 1

        if its % 10 == 0:
            shift = H[hi, hi] + 1.5 * abs(H[hi, hi - 1])
        else:
            shift = _wilkinson(H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi])

        idx = np.arange(lo, hi + 1)
        H[idx, idx] -= shift
        for k in range(lo, hi):
            a = H[k, k]
            b = H[k + 1, k]
            aa = abs(a)
            r = np.hypot(aa, abs(b))
            if r == 0.0:
                cs[k], sn[k] = 1.0, 0.0
                continue
            if aa == 0.0:
                cs[k], sn[k] = 0.0, b.conjugate() / abs(b)
            else:
                cs[k], sn[k] = aa / r, (a / aa) * b.conjugate() / r
            c, s = cs[k], sn[k]
            x = H[k, k:hi + 1].copy()
            y = H[k + 1, k:hi + 1]
            H[k, k:hi + 1] = c * x + s * y
            H[k + 1, k:hi + 1] = -s.conjugate() * x + c * y
        for k in range(lo, hi):
            c, s = cs[k], sn[k]
            imax = min(k + 2, hi)
            x = H[lo:imax + 1, k].copy()
            y = H[lo:imax + 1, k + 1]
            H[lo:imax + 1, k] = c * x + s.conjugate() * y
            H[lo:imax + 1, k + 1] = -s * x + c * y
        H[idx, idx] += shift
    return w, total
