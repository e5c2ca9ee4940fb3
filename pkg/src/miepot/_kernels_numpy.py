"""Vectorized numpy versions of the hot kernels (no compiler required).

Sturm counts are evaluated for many shifts at once, so eigenvalues are found
by multisection rather than one-shift-at-a-time bisection.
"""

import numpy as np
from scipy.linalg import solve_banded

_EPS = np.finfo(np.float64).eps
_TINY = np.finfo(np.float64).tiny
_SECTIONS = 256


def _sturm_counts(diag, off2, shifts):
    pivmin = _TINY * max(1.0, float(off2.max(initial=1.0)))
    d = diag[0] - shifts
    d[np.abs(d) < pivmin] = -pivmin
    count = (d < 0).astype(np.int64)
    for i in range(1, diag.shape[0]):
        d = (diag[i] - shifts) - off2[i - 1] / d
        d[np.abs(d) < pivmin] = -pivmin
        count += d < 0
    return count


def sturm_count(diag, off2, shift):
    return int(_sturm_counts(diag, off2, np.atleast_1d(float(shift)))[0])


def gershgorin(diag, off):
    r = np.zeros_like(diag)
    r[:-1] += np.abs(off)
    r[1:] += np.abs(off)
    return float((diag - r).min()), float((diag + r).max())


def lowest_eigenvalues(diag, off, count, tol):
    off2 = off * off
    lo0, hi0 = gershgorin(diag, off)
    # bound states sit below zero; skip the positive half of the Gershgorin range
    if hi0 > 0.0 and lo0 < 0.0 and sturm_count(diag, off2, 0.0) >= count:
        hi0 = 0.0
    lo = np.full(count, lo0)
    hi = np.full(count, hi0)
    ks = np.arange(count)
    frac = np.arange(1, _SECTIONS) / _SECTIONS
    while True:
        width = hi - lo
        active = width > tol + 2.0 * _EPS * np.maximum(np.abs(lo), np.abs(hi))
        if not active.any():
            break
        shifts = lo[:, None] + width[:, None] * frac[None, :]
        counts = _sturm_counts(diag, off2, shifts.ravel()).reshape(shifts.shape)
        above = counts > ks[:, None]
        # first section point whose count exceeds k bounds eigenvalue k from above
        first = np.where(above.any(axis=1), above.argmax(axis=1), _SECTIONS - 1)
        new_lo = np.where(first > 0, shifts[ks, np.maximum(first - 1, 0)], lo)
        new_hi = np.where(above.any(axis=1), shifts[ks, np.minimum(first, _SECTIONS - 2)], hi)
        stalled = (new_lo == lo) & (new_hi == hi)
        lo = np.where(active, new_lo, lo)
        hi = np.where(active, new_hi, hi)
        if np.all(stalled | ~active):
            break
    return lo + 0.5 * (hi - lo)


def tridiag_solve(diag, off, shift, rhs):
    n = diag.shape[0]
    ab = np.zeros((3, n))
    ab[0, 1:] = off
    ab[1] = diag - shift
    ab[2, :-1] = off
    return solve_banded((1, 1), ab, rhs, check_finite=False)


def laguerre(n, alpha, z):
    z = np.asarray(z, dtype=float)
    prev = np.ones_like(z)
    if n == 0:
        return prev
    cur = 1.0 + alpha - z
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - z) * cur - (k + alpha) * prev) / (k + 1)
    return cur
