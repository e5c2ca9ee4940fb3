"""Loop-style kernels compiled with numba."""

import numpy as np
from numba import njit

_EPS = np.finfo(np.float64).eps
_TINY = np.finfo(np.float64).tiny


@njit(cache=True, nogil=True)
def _pivmin(off2):
    m = 1.0
    for v in off2:
        if v > m:
            m = v
    return _TINY * m


@njit(cache=True, nogil=True)
def sturm_count(diag, off2, shift):
    """Number of eigenvalues of the symmetric tridiagonal matrix below ``shift``.

    ``off2`` holds the squared off-diagonal entries.
    """
    pivmin = _pivmin(off2)
    count = 0
    d = diag[0] - shift
    if abs(d) < pivmin:
        d = -pivmin
    if d < 0.0:
        count += 1
    for i in range(1, diag.shape[0]):
        d = (diag[i] - shift) - off2[i - 1] / d
        if abs(d) < pivmin:
            d = -pivmin
        if d < 0.0:
            count += 1
    return count


@njit(cache=True, nogil=True)
def gershgorin(diag, off):
    n = diag.shape[0]
    lo = np.inf
    hi = -np.inf
    for i in range(n):
        r = 0.0
        if i > 0:
            r += abs(off[i - 1])
        if i < n - 1:
            r += abs(off[i])
        lo = min(lo, diag[i] - r)
        hi = max(hi, diag[i] + r)
    return lo, hi


@njit(cache=True, nogil=True)
def lowest_eigenvalues(diag, off, count, tol):
    """The ``count`` smallest eigenvalues by Sturm-sequence bisection."""
    off2 = off * off
    lo0, hi0 = gershgorin(diag, off)
    out = np.empty(count)
    lower = lo0
    for k in range(count):
        lo = lower
        hi = hi0
        while True:
            width = hi - lo
            if width <= tol + 2.0 * _EPS * max(abs(lo), abs(hi)):
                break
            mid = lo + 0.5 * width
            if mid <= lo or mid >= hi:
                break
            if sturm_count(diag, off2, mid) > k:
                hi = mid
            else:
                lo = mid
        out[k] = lo + 0.5 * (hi - lo)
        lower = lo
    return out


@njit(cache=True, nogil=True)
def tridiag_solve(diag, off, shift, rhs):
    """Solve (T - shift I) x = rhs with partial pivoting (LU of a tridiagonal)."""
    n = diag.shape[0]
    dl = off.copy()
    d = diag - shift
    du = off.copy()
    du2 = np.zeros(max(n - 2, 0))
    ipiv_swap = np.zeros(n, dtype=np.bool_)
    b = rhs.copy()
    for i in range(n - 1):
        if abs(d[i]) >= abs(dl[i]):
            if d[i] == 0.0:
                d[i] = _EPS * 1e-3
            fact = dl[i] / d[i]
            dl[i] = fact
            d[i + 1] -= fact * du[i]
        else:
            ipiv_swap[i] = True
            fact = d[i] / dl[i]
            d[i] = dl[i]
            dl[i] = fact
            temp = du[i]
            du[i] = d[i + 1]
            d[i + 1] = temp - fact * d[i + 1]
            if i < n - 2:
                du2[i] = du[i + 1]
                du[i + 1] = -fact * du[i + 1]
    if d[n - 1] == 0.0:
        d[n - 1] = _EPS * 1e-3
    # forward substitution with the recorded row swaps
    for i in range(n - 1):
        if ipiv_swap[i]:
            temp = b[i]
            b[i] = b[i + 1]
            b[i + 1] = temp - dl[i] * b[i + 1]
        else:
            b[i + 1] -= dl[i] * b[i]
    # back substitution
    b[n - 1] /= d[n - 1]
    if n > 1:
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2]
    for i in range(n - 3, -1, -1):
        b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i]
    return b


@njit(cache=True, nogil=True)
def laguerre(n, alpha, z):
    out = np.empty(z.shape[0])
    for j in range(z.shape[0]):
        x = z[j]
        prev = 1.0
        if n == 0:
            out[j] = prev
            continue
        cur = 1.0 + alpha - x
        for k in range(1, n):
            nxt = ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
            prev = cur
            cur = nxt
        out[j] = cur
    return out
