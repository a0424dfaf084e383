# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Same contract as ``_pykernels``; coefficients stay
Python objects (exact rationals or field elements), only the index loops
are native."""
from libc.stdlib cimport malloc, free


def mul_range(list a, list b, Py_ssize_t lo, Py_ssize_t hi,
              const long long[::1] deg, const long long[::1] ncum,
              const long long[::1] rowptr, const long long[::1] kidx):
    cdef Py_ssize_t n_out = ncum[hi]
    cdef list out = [0] * n_out
    cdef Py_ssize_t na = min(len(a), n_out)
    cdef Py_ssize_t nb = min(len(b), n_out)
    cdef Py_ssize_t i, j, t, p, jlo, jhi, base, k, nnz = 0
    cdef Py_ssize_t *bnz = <Py_ssize_t *> malloc((nb + 1) * sizeof(Py_ssize_t))
    if bnz == NULL:
        raise MemoryError()
    try:
        for j in range(nb):
            if b[j]:
                bnz[nnz] = j
                nnz += 1
        if nnz == 0:
            return out
        for i in range(na):
            ai = a[i]
            if not ai:
                continue
            p = deg[i]
            if hi - p < 0:
                break
            jlo = ncum[lo - p - 1] if lo - p - 1 >= 0 else 0
            jhi = ncum[hi - p]
            base = rowptr[i]
            for t in range(nnz):
                j = bnz[t]
                if j >= jhi:
                    break
                if j >= jlo:
                    k = kidx[base + j]
                    out[k] = out[k] + ai * b[j]
        return out
    finally:
        free(bnz)


def axpy(list acc, c, list p, Py_ssize_t n):
    cdef Py_ssize_t j, m = min(n, len(p), len(acc))
    for j in range(m):
        pj = p[j]
        if pj:
            acc[j] = acc[j] + c * pj
