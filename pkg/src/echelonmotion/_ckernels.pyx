# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``.

Entries are 64-bit.  Intermediate products are formed in 128-bit integers and
any result that does not fit raises ``OverflowError``; callers then rerun the
pure-Python kernel, so results stay exact.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"

cdef extern from *:
    """
    #include <limits.h>
    static inline int combine_fits(long long ca, long long x, long long cb, long long y,
                                   long long *out) {
        __int128 v = (__int128)ca * x - (__int128)cb * y;
        if (v > LLONG_MAX || v <= LLONG_MIN) return 0;
        *out = (long long)v;
        return 1;
    }
    static inline int bareiss_fits(long long a, long long x, long long b, long long y,
                                   long long prev, long long *out) {
        __int128 v = ((__int128)a * x - (__int128)b * y) / prev;
        if (v > LLONG_MAX || v <= LLONG_MIN) return 0;
        *out = (long long)v;
        return 1;
    }
    """
    bint combine_fits(long long ca, long long x, long long cb, long long y, long long *out) nogil
    bint bareiss_fits(long long a, long long x, long long b, long long y,
                      long long prev, long long *out) nogil


cdef inline long long _gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef inline long long _inv_mod(long long a, long long p) nogil:
    # extended Euclid; a is nonzero mod p
    cdef long long t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def bruhat_pivots(M, Py_ssize_t ncols):
    cdef cnp.ndarray[cnp.int64_t, ndim=2] arr = np.ascontiguousarray(
        np.asarray(M, dtype=np.int64)[:, :ncols]).copy()
    cdef long long[:, ::1] A = arr
    cdef Py_ssize_t n = A.shape[0]
    cdef Py_ssize_t i, j, k, c
    cdef long long a, b, g, ca, cb, v, content
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] avail_arr = np.ones(n, dtype=np.uint8)
    cdef unsigned char[::1] avail = avail_arr
    cdef cnp.ndarray[cnp.int64_t, ndim=1] piv_arr = np.full(ncols, -1, dtype=np.int64)
    cdef long long[::1] piv = piv_arr
    cdef bint overflow = False
    with nogil:
        for j in range(ncols):
            i = n - 1
            while i >= 0 and (not avail[i] or A[i, j] == 0):
                i -= 1
            if i < 0:
                break
            piv[j] = i
            avail[i] = 0
            a = A[i, j]
            for k in range(i):
                b = A[k, j]
                if not avail[k] or b == 0:
                    continue
                g = _gcd(a, b)
                ca = a // g
                cb = b // g
                content = 0
                for c in range(j + 1, ncols):
                    if not combine_fits(ca, A[k, c], cb, A[i, c], &v):
                        overflow = True
                        break
                    A[k, c] = v
                    if v:
                        content = _gcd(content, v)
                if overflow:
                    break
                A[k, j] = 0
                if content > 1:
                    for c in range(j + 1, ncols):
                        A[k, c] = A[k, c] // content
            if overflow:
                break
    if overflow:
        raise OverflowError("entry exceeded 64 bits during Bruhat sweep")
    return piv_arr.tolist()


def bruhat_pivots_mod(M, Py_ssize_t ncols, long long p):
    cdef cnp.ndarray[cnp.int64_t, ndim=2] arr = np.ascontiguousarray(
        np.mod(np.asarray(M, dtype=np.int64)[:, :ncols], p))
    cdef long long[:, ::1] A = arr
    cdef Py_ssize_t n = A.shape[0]
    cdef Py_ssize_t i, j, k, c
    cdef long long f, inv
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] avail_arr = np.ones(n, dtype=np.uint8)
    cdef unsigned char[::1] avail = avail_arr
    cdef cnp.ndarray[cnp.int64_t, ndim=1] piv_arr = np.full(ncols, -1, dtype=np.int64)
    cdef long long[::1] piv = piv_arr
    with nogil:
        for j in range(ncols):
            i = n - 1
            while i >= 0 and (not avail[i] or A[i, j] == 0):
                i -= 1
            if i < 0:
                break
            piv[j] = i
            avail[i] = 0
            inv = _inv_mod(A[i, j], p)
            for k in range(i):
                if not avail[k] or A[k, j] == 0:
                    continue
                f = A[k, j] * inv % p
                for c in range(j + 1, ncols):
                    A[k, c] = (A[k, c] - f * A[i, c]) % p
                    if A[k, c] < 0:
                        A[k, c] += p
                A[k, j] = 0
    return piv_arr.tolist()


def rank_exact(M):
    cdef cnp.ndarray[cnp.int64_t, ndim=2] arr = np.array(M, dtype=np.int64, ndmin=2, copy=True)
    cdef long long[:, ::1] A = arr
    cdef Py_ssize_t n = A.shape[0], m = A.shape[1]
    cdef Py_ssize_t r = 0, c, p, i, jj
    cdef long long prev = 1, pv, f, v, tmp
    cdef bint overflow = False
    with nogil:
        for c in range(m):
            p = r
            while p < n and A[p, c] == 0:
                p += 1
            if p == n:
                continue
            if p != r:
                for jj in range(m):
                    tmp = A[r, jj]
                    A[r, jj] = A[p, jj]
                    A[p, jj] = tmp
            pv = A[r, c]
            for i in range(r + 1, n):
                f = A[i, c]
                for jj in range(c + 1, m):
                    if not bareiss_fits(pv, A[i, jj], f, A[r, jj], prev, &v):
                        overflow = True
                        break
                    A[i, jj] = v
                if overflow:
                    break
                A[i, c] = 0
            if overflow:
                break
            prev = pv
            r += 1
            if r == n:
                break
    if overflow:
        raise OverflowError("entry exceeded 64 bits during Bareiss elimination")
    return r


def rank_mod(M, long long p):
    cdef cnp.ndarray[cnp.int64_t, ndim=2] arr = np.ascontiguousarray(
        np.mod(np.array(M, dtype=np.int64, ndmin=2), p))
    cdef long long[:, ::1] A = arr
    cdef Py_ssize_t n = A.shape[0], m = A.shape[1]
    cdef Py_ssize_t r = 0, c, q, i, jj
    cdef long long inv, f, tmp
    with nogil:
        for c in range(m):
            q = r
            while q < n and A[q, c] == 0:
                q += 1
            if q == n:
                continue
            if q != r:
                for jj in range(m):
                    tmp = A[r, jj]
                    A[r, jj] = A[q, jj]
                    A[q, jj] = tmp
            inv = _inv_mod(A[r, c], p)
            for i in range(r + 1, n):
                if A[i, c]:
                    f = A[i, c] * inv % p
                    for jj in range(c, m):
                        A[i, jj] = (A[i, jj] - f * A[r, jj]) % p
                        if A[i, jj] < 0:
                            A[i, jj] += p
            r += 1
            if r == n:
                break
    return r
