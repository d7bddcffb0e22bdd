# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled cyclic Jacobi kernel for dense complex Hermitian matrices."""

from libc.math cimport sqrt


def jacobi_sweeps(double complex[:, ::1] a, double complex[:, ::1] v,
                  double tol, int max_sweeps):
    """Diagonalize Hermitian ``a`` in place, accumulating rotations into ``v``.

    ``a`` must be Hermitian and ``v`` the identity on entry; on exit ``a`` is
    (numerically) diagonal and ``v`` holds the eigenvector columns.  Returns
    the number of sweeps performed, or -1 if the off-diagonal Frobenius norm
    is still above ``tol`` after ``max_sweeps``.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, k
    cdef int sweep
    cdef double off2, tol2, skip, r, tau, t, c, re, im
    cdef double complex apq, s, sc, xp, xq

    tol2 = tol * tol
    skip = tol / (n * n) if n > 0 else 0.0
    for sweep in range(max_sweeps):
        off2 = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                re = a[p, q].real
                im = a[p, q].imag
                off2 += 2.0 * (re * re + im * im)
        if off2 <= tol2:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = sqrt(apq.real * apq.real + apq.imag * apq.imag)
                if r <= skip:
                    continue
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(tau * tau + 1.0))
                else:
                    t = -1.0 / (-tau + sqrt(tau * tau + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = (t * c / r) * apq
                sc = s.conjugate()
                # A <- R^H A R with R the plane rotation
                #   R[p,p] = c, R[p,q] = s, R[q,p] = -conj(s), R[q,q] = c
                for k in range(n):
                    xp = a[k, p]
                    xq = a[k, q]
                    a[k, p] = c * xp - sc * xq
                    a[k, q] = s * xp + c * xq
                for k in range(n):
                    xp = a[p, k]
                    xq = a[q, k]
                    a[p, k] = c * xp - s * xq
                    a[q, k] = sc * xp + c * xq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                for k in range(n):
                    xp = v[k, p]
                    xq = v[k, q]
                    v[k, p] = c * xp - sc * xq
                    v[k, q] = s * xp + c * xq
    off2 = 0.0
    for p in range(n - 1):
        for q in range(p + 1, n):
            re = a[p, q].real
            im = a[p, q].imag
            off2 += 2.0 * (re * re + im * im)
    if off2 <= tol2:
        return max_sweeps
    return -1
