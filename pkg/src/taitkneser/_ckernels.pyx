# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.math cimport atan2, cos, sin, cosh, sinh, sqrt, fabs, hypot

cnp.import_array()

MAX_CROSSINGS = 8
MAX_SUSPECTS = 8


def pairwise_interval_matrix(params, gram):
    cdef double[:, ::1] P = np.ascontiguousarray(params, dtype=np.float64)
    cdef double[:, ::1] G = np.ascontiguousarray(gram, dtype=np.float64)
    cdef Py_ssize_t n = P.shape[0]
    q_arr = np.zeros((n, n))
    qn_arr = np.zeros((n, n))
    cdef double[:, ::1] q = q_arr
    cdef double[:, ::1] qn = qn_arr
    cdef Py_ssize_t i, j, a, b
    cdef double d[3]
    cdef double s, n2
    for i in range(n):
        for j in range(i + 1, n):
            for a in range(3):
                d[a] = P[j, a] - P[i, a]
            s = 0.0
            for a in range(3):
                for b in range(3):
                    s += d[a] * G[a, b] * d[b]
            n2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2]
            q[i, j] = s
            q[j, i] = s
            if n2 > 0:
                qn[i, j] = s / n2
                qn[j, i] = s / n2
    return q_arr, qn_arr


cdef struct Frame:
    double l1, l2, cph, sph
    int kind


cdef inline Frame _frame(double a, double b, double c) nogil:
    cdef Frame f
    cdef double half_tr = 0.5 * (a + c)
    cdef double rad = hypot(0.5 * (a - c), b)
    cdef double phi = 0.5 * atan2(2.0 * b, a - c)
    f.l1 = half_tr + rad
    f.l2 = half_tr - rad
    f.cph = cos(phi)
    f.sph = sin(phi)
    if f.l2 > 0:
        f.kind = 1
    elif f.l1 > 0 and f.l2 < 0:
        f.kind = -1
    else:
        f.kind = 0
    return f


cdef inline void _point(Frame* f, double s, double branch, double* x, double* y) nogil:
    cdef double u, v
    if f.kind == 1:
        u = cos(s) / sqrt(f.l1)
        v = sin(s) / sqrt(f.l2)
    else:
        u = branch * cosh(s) / sqrt(f.l1)
        v = sinh(s) / sqrt(fabs(f.l2))
    x[0] = f.cph * u - f.sph * v
    y[0] = f.sph * u + f.cph * v


cdef inline double _side(double a, double b, double c, double x, double y) nogil:
    cdef double val = a * x * x + 2.0 * b * x * y + c * y * y - 1.0
    cdef double scale = fabs(a) * x * x + 2.0 * fabs(b * x * y) + fabs(c) * y * y + 1.0
    return val / scale


cdef inline int _sgn(double v) nogil:
    return (v > 0) - (v < 0)


def hooke_scan(m1, m2, int n_samples=720, double extent=4.0, double band=1e-8, double xtol=1e-10):
    if n_samples % 2:
        raise ValueError("n_samples must be even")
    cdef double[:, ::1] A = np.ascontiguousarray(np.atleast_2d(m1), dtype=np.float64)
    cdef double[:, ::1] B = np.ascontiguousarray(np.atleast_2d(m2), dtype=np.float64)
    cdef Py_ssize_t k = A.shape[0]
    kind_arr = np.zeros(k, dtype=np.int64)
    ncross_arr = np.zeros(k, dtype=np.int64)
    nsusp_arr = np.zeros(k, dtype=np.int64)
    smin_arr = np.full(k, np.nan)
    smax_arr = np.full(k, np.nan)
    pts_arr = np.full((k, MAX_CROSSINGS, 2), np.nan)
    susp_arr = np.full((k, MAX_SUSPECTS, 3), np.nan)
    cdef long long[::1] kind_v = kind_arr
    cdef long long[::1] ncross = ncross_arr
    cdef long long[::1] nsusp = nsusp_arr
    cdef double[::1] smin = smin_arr
    cdef double[::1] smax = smax_arr
    cdef double[:, :, ::1] pts = pts_arr
    cdef double[:, :, ::1] susp = susp_arr

    cdef int half = n_samples // 2
    cdef double two_pi = 6.283185307179586
    s_ell_arr = np.linspace(0.0, two_pi, n_samples, endpoint=False)
    s_hyp_arr = np.linspace(-extent, extent, half)
    cdef double[::1] s_ell = s_ell_arr
    cdef double[::1] s_hyp = s_hyp_arr
    # unit-conic coordinates on the grid are shared by every pair
    cdef double[::1] ell_u = np.cos(s_ell_arr)
    cdef double[::1] ell_v = np.sin(s_ell_arr)
    cdef double[::1] hyp_u = np.cosh(s_hyp_arr)
    cdef double[::1] hyp_v = np.sinh(s_hyp_arr)
    cdef double r1, r2, u, v
    g_arr = np.empty(n_samples)
    s_arr = np.empty(n_samples)
    br_arr = np.empty(n_samples)
    cr_arr = np.zeros(n_samples, dtype=np.int8)
    cdef double[::1] g = g_arr
    cdef double[::1] S = s_arr
    cdef double[::1] BR = br_arr
    cdef signed char[::1] CR = cr_arr

    cdef Py_ssize_t p, i, nx, pv
    cdef Frame f
    cdef double a2, b2, c2, x, y, lo, hi, glo, mid, gm, gmin, gmax, ag, dip, s_prev, s_next
    cdef int c
    cdef int max_cross = MAX_CROSSINGS
    cdef int max_susp = MAX_SUSPECTS
    cdef bint ell
    with nogil:
        for p in range(k):
            f = _frame(A[p, 0], A[p, 1], A[p, 2])
            kind_v[p] = f.kind
            if f.kind == 0:
                continue
            ell = f.kind == 1
            a2 = B[p, 0]
            b2 = B[p, 1]
            c2 = B[p, 2]
            r1 = 1.0 / sqrt(f.l1)
            r2 = 1.0 / sqrt(fabs(f.l2))
            for i in range(n_samples):
                if ell:
                    S[i] = s_ell[i]
                    BR[i] = 1.0
                    u = ell_u[i] * r1
                    v = ell_v[i] * r2
                elif i < half:
                    S[i] = s_hyp[i]
                    BR[i] = 1.0
                    u = hyp_u[i] * r1
                    v = hyp_v[i] * r2
                else:
                    S[i] = s_hyp[i - half]
                    BR[i] = -1.0
                    u = -hyp_u[i - half] * r1
                    v = hyp_v[i - half] * r2
                x = f.cph * u - f.sph * v
                y = f.sph * u + f.cph * v
                g[i] = _side(a2, b2, c2, x, y)
            gmin = g[0]
            gmax = g[0]
            for i in range(1, n_samples):
                if g[i] < gmin:
                    gmin = g[i]
                if g[i] > gmax:
                    gmax = g[i]
            smin[p] = gmin
            smax[p] = gmax
            # strict sign changes between forward neighbours
            for i in range(n_samples):
                CR[i] = 0
                if not ell and (i == half - 1 or i == n_samples - 1):
                    continue
                nx = i + 1 if i + 1 < n_samples else 0
                if fabs(g[i]) <= band or fabs(g[nx]) <= band or _sgn(g[i]) == _sgn(g[nx]):
                    continue
                CR[i] = 1
                lo = S[i]
                hi = S[nx] if nx != 0 else two_pi
                glo = g[i]
                while hi - lo > xtol:
                    mid = 0.5 * (lo + hi)
                    _point(&f, mid, BR[i], &x, &y)
                    gm = _side(a2, b2, c2, x, y)
                    if _sgn(gm) == _sgn(glo):
                        lo = mid
                        glo = gm
                    else:
                        hi = mid
                c = ncross[p]
                if c < max_cross:
                    _point(&f, 0.5 * (lo + hi), BR[i], &x, &y)
                    pts[p, c, 0] = x
                    pts[p, c, 1] = y
                ncross[p] = c + 1
            # near-touch local minima of |g| without a sign change; between samples a
    # quadratic dip can undershoot the sampled value by about dip / 8
            for i in range(n_samples):
                if not ell and (i == 0 or i == half - 1 or i == half or i == n_samples - 1):
                    continue
                nx = i + 1 if i + 1 < n_samples else 0
                pv = i - 1 if i > 0 else n_samples - 1
                if CR[i] or CR[pv]:
                    continue
                ag = fabs(g[i])
                if ag > fabs(g[pv]) or ag > fabs(g[nx]):
                    continue
                dip = fabs(g[pv] - 2.0 * g[i] + g[nx])
                if ag > 0.5 * dip + band:
                    continue
                c = nsusp[p]
                if c < max_susp:
                    s_prev = S[pv] if i > 0 else -two_pi / n_samples
                    s_next = S[nx] if nx != 0 else two_pi
                    susp[p, c, 0] = s_prev
                    susp[p, c, 1] = s_next
                    susp[p, c, 2] = BR[i]
                nsusp[p] = c + 1
    return kind_arr, ncross_arr, smin_arr, smax_arr, pts_arr, nsusp_arr, susp_arr
