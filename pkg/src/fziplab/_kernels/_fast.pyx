# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend: dense mod-p elimination and integer sparse
composition.  Mirrors the contracts of ``reference.py`` exactly; callers
are responsible for keeping values inside int64 (the dispatcher checks)."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "fast"


def rref_mod_p(rows, long p):
    # np.array([]) and np.array([[], []]) do not make 2-D int buffers
    if len(rows) == 0 or len(rows[0]) == 0:
        return [], []
    cdef cnp.ndarray[cnp.int64_t, ndim=2] mat = np.array(rows, dtype=np.int64)
    mat %= p
    cdef long nrows = mat.shape[0]
    cdef long ncols = mat.shape[1]
    cdef long r = 0, c, i, j, pr, f, inv
    cdef cnp.int64_t[:, :] m = mat
    pivots = []
    for c in range(ncols):
        pr = -1
        for i in range(r, nrows):
            if m[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(ncols):
                m[r, j], m[pr, j] = m[pr, j], m[r, j]
        inv = _inv_mod(m[r, c], p)
        if inv != 1:
            for j in range(c, ncols):
                m[r, j] = (m[r, j] * inv) % p
        for i in range(nrows):
            if i != r and m[i, c] != 0:
                f = m[i, c]
                for j in range(c, ncols):
                    if m[r, j] != 0:
                        # C-style % truncates toward zero, so renormalize
                        m[i, j] = ((m[i, j] - f * m[r, j]) % p + p) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return mat[:r].tolist(), pivots


cdef long _inv_mod(long a, long p):
    cdef long result = 1, base = a % p, n = p - 2
    while n:
        if n & 1:
            result = (result * base) % p
        base = (base * base) % p
        n >>= 1
    return result


def matmul_mod_p(a, b, long p):
    cdef long m0 = len(a)
    if m0 == 0:
        return []
    if len(a[0]) != len(b):
        raise ValueError("dimension mismatch")
    cdef long n0 = len(b[0]) if len(b) else 0
    if len(b) == 0 or n0 == 0:
        return [[0] * n0 for _ in range(m0)]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] am = np.array(a, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] bm = np.array(b, dtype=np.int64)
    am %= p
    bm %= p
    cdef long m = am.shape[0], k = am.shape[1], n = bm.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] out = np.zeros((m, n), dtype=np.int64)
    cdef cnp.int64_t[:, :] av = am, bv = bm, ov = out
    cdef long i, j, t
    cdef cnp.int64_t s
    for i in range(m):
        for j in range(n):
            s = 0
            for t in range(k):
                s += av[i, t] * bv[t, j]
                if t % 1024 == 1023:
                    s %= p
            ov[i, j] = s % p
    return out.tolist()


def sparse_compose_int(long m, long k,
                       cnp.int64_t[:] a_indptr, cnp.int64_t[:] a_rows, cnp.int64_t[:] a_data,
                       long n,
                       cnp.int64_t[:] b_indptr, cnp.int64_t[:] b_rows, cnp.int64_t[:] b_data):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] acc = np.zeros(m, dtype=np.int64)
    cdef cnp.int64_t[:] accv = acc
    cdef list out_indptr = [0]
    cdef list out_rows = []
    cdef list out_data = []
    cdef cnp.ndarray[cnp.int64_t, ndim=1] touched = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[:] touchedv = touched
    cdef long j, t, s, i, r, ntouched, u
    cdef cnp.int64_t v
    for j in range(n):
        ntouched = 0
        for t in range(b_indptr[j], b_indptr[j + 1]):
            i = b_rows[t]
            v = b_data[t]
            if v == 0:
                continue
            for s in range(a_indptr[i], a_indptr[i + 1]):
                r = a_rows[s]
                if accv[r] == 0:
                    touchedv[ntouched] = r
                    ntouched += 1
                accv[r] = accv[r] + v * a_data[s]
        if ntouched:
            idx = np.sort(touched[:ntouched].copy())
            for u in range(ntouched):
                r = idx[u]
                v = accv[r]
                if v != 0:
                    out_rows.append(r)
                    out_data.append(v)
                accv[r] = 0
        out_indptr.append(len(out_rows))
    return out_indptr, out_rows, out_data
