# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts and arithmetic order as _pykernels."""

import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY

cnp.import_array()


def fft_rows(double[:, ::1] re, double[:, ::1] im, const double[::1] tw_re,
             const double[::1] tw_im, const cnp.intp_t[::1] rev):
    cdef Py_ssize_t t = re.shape[0], n = re.shape[1]
    cdef Py_ssize_t row, k, half, stride, start, a, b
    cdef double wr, wi, ar, ai, br, bi, xr, xi
    cdef double[::1] buf_r = np.empty(n)
    cdef double[::1] buf_i = np.empty(n)
    with nogil:
        for row in range(t):
            for k in range(n):
                buf_r[k] = re[row, rev[k]]
                buf_i[k] = im[row, rev[k]]
            for k in range(n):
                re[row, k] = buf_r[k]
                im[row, k] = buf_i[k]
            half = 1
            while half < n:
                stride = n // (2 * half)
                start = 0
                while start < n:
                    for k in range(half):
                        wr = tw_re[k * stride]
                        wi = tw_im[k * stride]
                        a = start + k
                        b = a + half
                        ar = re[row, a]
                        ai = im[row, a]
                        br = re[row, b]
                        bi = im[row, b]
                        xr = br * wr - bi * wi
                        xi = br * wi + bi * wr
                        re[row, a] = ar + xr
                        im[row, a] = ai + xi
                        re[row, b] = ar - xr
                        im[row, b] = ai - xi
                    start += 2 * half
                half *= 2


def sqdist(const double[:, ::1] q, const double[:, ::1] c):
    cdef Py_ssize_t n = q.shape[0], m = c.shape[0], dims = q.shape[1], i, j, k
    cdef double acc, diff
    out_arr = np.empty((n, m))
    cdef double[:, ::1] out = out_arr
    with nogil:
        for i in range(n):
            for j in range(m):
                acc = 0.0
                for k in range(dims):
                    diff = q[i, k] - c[j, k]
                    acc = acc + diff * diff
                out[i, j] = acc
    return out_arr


def accumulate(const double[:, ::1] dist, const cnp.int64_t[::1] lo, const cnp.int64_t[::1] hi):
    cdef Py_ssize_t n = dist.shape[0], m = dist.shape[1], i, j
    cdef double best
    cdef long long visits = 0
    acc_arr = np.full((n, m), np.inf)
    cdef double[:, ::1] acc = acc_arr
    with nogil:
        for i in range(n):
            for j in range(lo[i], hi[i] + 1):
                if i == 0 and j == 0:
                    best = 0.0
                else:
                    best = INFINITY
                    if i > 0:
                        if j > 0 and acc[i - 1, j - 1] < best:
                            best = acc[i - 1, j - 1]
                        if acc[i - 1, j] < best:
                            best = acc[i - 1, j]
                    if j > 0 and acc[i, j - 1] < best:
                        best = acc[i, j - 1]
                acc[i, j] = dist[i, j] + best
            visits += hi[i] - lo[i] + 1
    return acc_arr, visits


cdef inline double _min_run(double[:, :, ::1] a, Py_ssize_t i, Py_ssize_t j, Py_ssize_t s) noexcept nogil:
    cdef double best = INFINITY
    cdef Py_ssize_t r
    for r in range(s):
        if a[i, j, r] < best:
            best = a[i, j, r]
    return best


def accumulate_slope(const double[:, ::1] dist, const cnp.int64_t[::1] lo,
                     const cnp.int64_t[::1] hi, Py_ssize_t max_run):
    cdef Py_ssize_t n = dist.shape[0], m = dist.shape[1], s = max_run, i, j, r
    cdef double d, best, v
    cdef long long visits = 0
    diag_arr = np.full((n, m), np.inf)
    vert_arr = np.full((n, m, s), np.inf)
    horiz_arr = np.full((n, m, s), np.inf)
    cdef double[:, ::1] diag = diag_arr
    cdef double[:, :, ::1] vert = vert_arr
    cdef double[:, :, ::1] horiz = horiz_arr
    with nogil:
        for i in range(n):
            for j in range(lo[i], hi[i] + 1):
                d = dist[i, j]
                if i == 0 and j == 0:
                    diag[0, 0] = d + 0.0
                if i > 0 and j > 0:
                    best = diag[i - 1, j - 1]
                    v = _min_run(vert, i - 1, j - 1, s)
                    if v < best:
                        best = v
                    v = _min_run(horiz, i - 1, j - 1, s)
                    if v < best:
                        best = v
                    diag[i, j] = d + best
                if i > 0:
                    best = diag[i - 1, j]
                    v = _min_run(horiz, i - 1, j, s)
                    if v < best:
                        best = v
                    vert[i, j, 0] = d + best
                    for r in range(1, s):
                        vert[i, j, r] = d + vert[i - 1, j, r - 1]
                if j > 0:
                    best = diag[i, j - 1]
                    v = _min_run(vert, i, j - 1, s)
                    if v < best:
                        best = v
                    horiz[i, j, 0] = d + best
                    for r in range(1, s):
                        horiz[i, j, r] = d + horiz[i, j - 1, r - 1]
            visits += hi[i] - lo[i] + 1
    return diag_arr, vert_arr, horiz_arr, visits
