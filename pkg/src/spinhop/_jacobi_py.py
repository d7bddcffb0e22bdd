"""Pure-Python fallback of the cyclic Jacobi kernel.

Same algorithm and update order as the compiled extension; the per-rotation
row/column updates are numpy slice operations instead of C loops.
"""

from __future__ import annotations

import numpy as np


def _off_norm_sq(a):
    upper = a[np.triu_indices(a.shape[0], k=1)]
    return 2.0 * float((upper.real**2 + upper.imag**2).sum())


def jacobi_sweeps(a, v, tol, max_sweeps):
    """Diagonalize Hermitian ``a`` in place, accumulating rotations into ``v``.

    Returns the number of sweeps performed, or -1 if the off-diagonal
    Frobenius norm is still above ``tol`` after ``max_sweeps``.
    """
    n = a.shape[0]
    tol2 = tol * tol
    skip = tol / (n * n) if n > 0 else 0.0
    for sweep in range(max_sweeps):
        if _off_norm_sq(a) <= tol2:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= skip:
                    continue
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(tau * tau + 1.0))
                else:
                    t = -1.0 / (-tau + np.sqrt(tau * tau + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = (t * c / r) * apq
                sc = s.conjugate()
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - sc * colq
                a[:, q] = s * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - s * rowq
                a[q, :] = sc * rowp + c * rowq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - sc * vq
                v[:, q] = s * vp + c * vq
    if _off_norm_sq(a) <= tol2:
        return max_sweeps
    return -1
