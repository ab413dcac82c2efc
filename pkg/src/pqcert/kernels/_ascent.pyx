# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled ascent lane: one tight loop per restart column.

Semantics match kernels._fallback exactly (normalization, freeze rule,
lowest-index tie-breaks); only the summation order differs.
"""

from libc.math cimport fabs, pow, isinf

import numpy as np


cdef double _vec_norm(double[::1] v, double e) noexcept:
    cdef Py_ssize_t i, n = v.shape[0]
    cdef double peak = 0.0, acc = 0.0, a
    if isinf(e):
        for i in range(n):
            a = fabs(v[i])
            if a > peak:
                peak = a
        return peak
    if e == 1.0:
        for i in range(n):
            acc += fabs(v[i])
        return acc
    for i in range(n):
        a = fabs(v[i])
        if a > peak:
            peak = a
    if peak == 0.0:
        return 0.0
    for i in range(n):
        acc += pow(fabs(v[i]) / peak, e)
    return peak * pow(acc, 1.0 / e)


cdef void _matvec(double[:, ::1] A, double[::1] x, double[::1] out) noexcept:
    cdef Py_ssize_t i, j, m = A.shape[0], n = A.shape[1]
    cdef double s
    for i in range(m):
        s = 0.0
        for j in range(n):
            s += A[i, j] * x[j]
        out[i] = s


cdef void _matvec_t(double[:, ::1] A, double[::1] y, double[::1] out) noexcept:
    cdef Py_ssize_t i, j, m = A.shape[0], n = A.shape[1]
    cdef double yi
    for j in range(n):
        out[j] = 0.0
    for i in range(m):
        yi = y[i]
        if yi != 0.0:
            for j in range(n):
                out[j] += A[i, j] * yi


cdef void _q_norming_direction(double[::1] y, double q, double[::1] g) noexcept:
    cdef Py_ssize_t i, best = 0, m = y.shape[0]
    cdef double peak = 0.0, a
    if isinf(q):
        for i in range(m):
            g[i] = 0.0
            a = fabs(y[i])
            if a > peak:
                peak = a
                best = i
        g[best] = -1.0 if y[best] < 0.0 else 1.0
        return
    if q == 1.0:
        for i in range(m):
            g[i] = 1.0 if y[i] > 0.0 else (-1.0 if y[i] < 0.0 else 0.0)
        return
    for i in range(m):
        a = fabs(y[i])
        if a > peak:
            peak = a
    if peak == 0.0:
        for i in range(m):
            g[i] = 0.0
        return
    for i in range(m):
        a = pow(fabs(y[i]) / peak, q - 1.0)
        g[i] = a if y[i] > 0.0 else (-a if y[i] < 0.0 else 0.0)


cdef void _p_dual_direction(double[::1] z, double p, double[::1] x) noexcept:
    cdef Py_ssize_t i, best = 0, n = z.shape[0]
    cdef double peak = 0.0, a
    if p == 1.0:
        for i in range(n):
            x[i] = 0.0
            a = fabs(z[i])
            if a > peak:
                peak = a
                best = i
        x[best] = -1.0 if z[best] < 0.0 else 1.0
        return
    if isinf(p):
        for i in range(n):
            x[i] = 1.0 if z[i] >= 0.0 else -1.0
        return
    for i in range(n):
        a = fabs(z[i])
        if a > peak:
            peak = a
    if peak == 0.0:
        for i in range(n):
            x[i] = 0.0
        return
    for i in range(n):
        a = pow(fabs(z[i]) / peak, 1.0 / (p - 1.0))
        x[i] = a if z[i] > 0.0 else (-a if z[i] < 0.0 else 0.0)


def ascent_run(A_in, X0_in, double p, double q, double tol=1e-12, long max_iter=10000):
    A = np.ascontiguousarray(A_in, dtype=np.float64)
    XT = np.ascontiguousarray(np.asarray(X0_in, dtype=np.float64).T)
    cdef double[:, ::1] Av = A
    cdef double[:, ::1] Xv = XT
    cdef Py_ssize_t m = Av.shape[0], n = Av.shape[1], k = Xv.shape[0]
    quot = np.zeros(k, dtype=np.float64)
    iters = np.zeros(k, dtype=np.int64)
    cdef double[::1] Rv = quot
    cdef long[::1] Iv = iters
    y_arr = np.empty(m, dtype=np.float64)
    g_arr = np.empty(m, dtype=np.float64)
    z_arr = np.empty(n, dtype=np.float64)
    xn_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] y = y_arr
    cdef double[::1] g = g_arr
    cdef double[::1] z = z_arr
    cdef double[::1] xn = xn_arr
    cdef double[::1] x
    cdef Py_ssize_t j, i
    cdef long t
    cdef double nrm, r, rn, rel, dn
    for j in range(k):
        x = Xv[j]
        nrm = _vec_norm(x, p)
        if nrm == 0.0:
            raise ValueError("ascent starts must be nonzero")
        for i in range(n):
            x[i] /= nrm
        _matvec(Av, x, y)
        r = _vec_norm(y, q)
        if r == 0.0:
            Rv[j] = 0.0
            continue
        for t in range(max_iter):
            _q_norming_direction(y, q, g)
            _matvec_t(Av, g, z)
            _p_dual_direction(z, p, xn)
            dn = _vec_norm(xn, p)
            Iv[j] += 1
            if dn == 0.0:
                break
            for i in range(n):
                xn[i] /= dn
            _matvec(Av, xn, y)
            rn = _vec_norm(y, q)
            if rn < r * (1.0 - 1e-9):
                raise AssertionError("ascent quotient decreased; the update map is broken")
            rel = (rn - r) / (rn if rn > 0.0 else 1.0)
            if rn >= r:
                for i in range(n):
                    x[i] = xn[i]
                r = rn
            else:
                break
            if rel < tol:
                break
        Rv[j] = r
    return quot, np.ascontiguousarray(XT.T), iters
